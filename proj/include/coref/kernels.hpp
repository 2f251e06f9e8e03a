#pragma once

#include <string>
#include <vector>

#include "coref/params.hpp"
#include "coref/scorer.hpp"
#include "coref/segmenter.hpp"
#include "coref/types.hpp"

// Gradient-free forward kernels for evaluation. serial:: is the reference
// implementation; omp:: produces bitwise-identical output with OpenMP loops
// (every output slot is written by exactly one iteration).
namespace coref::kernels {

namespace detail {

// 2 hidden ReLU layers + linear scalar output, parameters "<prefix>.w0" etc.
double ffnn_scalar(const ParameterSet& params, const std::string& prefix, const double* x,
                   int in);

// Hash-embedding + one local mixing layer for token t of segment [a,e);
// writes dim doubles to out.
void encode_token(const ParameterSet& params, const std::vector<int>& token_ids, int t, int a,
                  int e, double* out);

// g = [x_start, x_end, attention-weighted sum], 3*dim doubles.
void span_representation(const std::vector<double>& x, const std::vector<double>& alpha,
                         Span span, int dim, double* out);

// s_a(i,j) on the concatenation [g_i, g_j, g_i o g_j].
double antecedent_score(const ParameterSet& params, const double* gi, const double* gj, int dim,
                        std::vector<double>& buffer);

}  // namespace detail

namespace serial {

// Per-segment token vectors (segment-local context only).
std::vector<std::vector<double>> encode_segments(const ParameterSet& params,
                                                 const std::vector<int>& token_ids,
                                                 const std::vector<Segment>& segments);
// Full encode: segment, encode independently, merge by max context.
std::vector<double> encode(const ParameterSet& params, const std::vector<int>& token_ids);
// Unnormalized attention score alpha_t per token.
std::vector<double> attention_scores(const ParameterSet& params, const std::vector<double>& x,
                                     int n);
std::vector<double> span_representations(const std::vector<double>& x,
                                         const std::vector<double>& alpha,
                                         const std::vector<Span>& spans, int dim);
std::vector<double> mention_scores(const ParameterSet& params, const std::vector<double>& g,
                                   int num_spans);
// Full coref scores over kept spans (kept: ascending candidate indices).
AntecedentScores antecedent_scores(const ParameterSet& params, const std::vector<double>& g,
                                   const std::vector<int>& kept,
                                   const std::vector<double>& all_mention_scores,
                                   int max_antecedents);

}  // namespace serial

namespace omp {

std::vector<std::vector<double>> encode_segments(const ParameterSet& params,
                                                 const std::vector<int>& token_ids,
                                                 const std::vector<Segment>& segments);
std::vector<double> encode(const ParameterSet& params, const std::vector<int>& token_ids);
std::vector<double> attention_scores(const ParameterSet& params, const std::vector<double>& x,
                                     int n);
std::vector<double> span_representations(const std::vector<double>& x,
                                         const std::vector<double>& alpha,
                                         const std::vector<Span>& spans, int dim);
std::vector<double> mention_scores(const ParameterSet& params, const std::vector<double>& g,
                                   int num_spans);
AntecedentScores antecedent_scores(const ParameterSet& params, const std::vector<double>& g,
                                   const std::vector<int>& kept,
                                   const std::vector<double>& all_mention_scores,
                                   int max_antecedents);

}  // namespace omp

std::vector<int> hash_tokens(const Document& doc, int vocab);

}  // namespace coref::kernels

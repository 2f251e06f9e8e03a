#include "coref/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace coref::kernels {

namespace detail {

double ffnn_scalar(const ParameterSet& params, const std::string& prefix, const double* x,
                   int in) {
    const Array& w0 = params.arrays.at(prefix + ".w0");
    const Array& b0 = params.arrays.at(prefix + ".b0");
    const Array& w1 = params.arrays.at(prefix + ".w1");
    const Array& b1 = params.arrays.at(prefix + ".b1");
    const Array& w2 = params.arrays.at(prefix + ".w2");
    const Array& b2 = params.arrays.at(prefix + ".b2");
    int h = w0.shape[0];

    std::vector<double> h0(h), h1(h);
    for (int r = 0; r < h; ++r) {
        double acc = b0.data[r];
        const double* wr = w0.data.data() + static_cast<size_t>(r) * in;
        for (int c = 0; c < in; ++c) acc += wr[c] * x[c];
        h0[r] = std::max(acc, 0.0);
    }
    for (int r = 0; r < h; ++r) {
        double acc = b1.data[r];
        const double* wr = w1.data.data() + static_cast<size_t>(r) * h;
        for (int c = 0; c < h; ++c) acc += wr[c] * h0[c];
        h1[r] = std::max(acc, 0.0);
    }
    double out = b2.data[0];
    for (int c = 0; c < h; ++c) out += w2.data[c] * h1[c];
    return out;
}

void encode_token(const ParameterSet& params, const std::vector<int>& token_ids, int t, int a,
                  int e, double* out) {
    const Array& emb = params.arrays.at("encoder.embeddings");
    const Array& mw = params.arrays.at("encoder.mix_w");
    const Array& mb = params.arrays.at("encoder.mix_b");
    int d = mw.shape[0];

    int lo = std::max(a, t - 1), hi = std::min(e - 1, t + 1);
    std::vector<double> m(d, 0.0);
    for (int u = lo; u <= hi; ++u) {
        const double* row = emb.data.data() + static_cast<size_t>(token_ids[u]) * d;
        for (int i = 0; i < d; ++i) m[i] += row[i];
    }
    double inv = 1.0 / static_cast<double>(hi - lo + 1);
    for (int i = 0; i < d; ++i) m[i] *= inv;

    for (int r = 0; r < d; ++r) {
        double acc = mb.data[r];
        const double* wr = mw.data.data() + static_cast<size_t>(r) * d;
        for (int c = 0; c < d; ++c) acc += wr[c] * m[c];
        out[r] = std::tanh(acc);
    }
}

void span_representation(const std::vector<double>& x, const std::vector<double>& alpha,
                         Span span, int dim, double* out) {
    double amax = alpha[span.start];
    for (int t = span.start + 1; t <= span.end; ++t) amax = std::max(amax, alpha[t]);
    double z = 0.0;
    for (int t = span.start; t <= span.end; ++t) z += std::exp(alpha[t] - amax);

    std::copy_n(x.data() + static_cast<size_t>(span.start) * dim, dim, out);
    std::copy_n(x.data() + static_cast<size_t>(span.end) * dim, dim, out + dim);
    std::fill_n(out + 2 * dim, dim, 0.0);
    for (int t = span.start; t <= span.end; ++t) {
        double beta = std::exp(alpha[t] - amax) / z;
        const double* xt = x.data() + static_cast<size_t>(t) * dim;
        for (int i = 0; i < dim; ++i) out[2 * dim + i] += beta * xt[i];
    }
}

double antecedent_score(const ParameterSet& params, const double* gi, const double* gj, int dim,
                        std::vector<double>& buffer) {
    int g = 3 * dim;
    buffer.resize(static_cast<size_t>(3) * g);
    std::copy_n(gi, g, buffer.data());
    std::copy_n(gj, g, buffer.data() + g);
    for (int i = 0; i < g; ++i) buffer[2 * g + i] = gi[i] * gj[i];
    return ffnn_scalar(params, "antecedent", buffer.data(), 3 * g);
}

}  // namespace detail

std::vector<int> hash_tokens(const Document& doc, int vocab) {
    std::vector<int> ids(doc.tokens.size());
    for (size_t t = 0; t < doc.tokens.size(); ++t) ids[t] = token_hash(doc.tokens[t].text, vocab);
    return ids;
}

namespace {

std::vector<std::vector<double>> encode_segments_impl(const ParameterSet& params,
                                                      const std::vector<int>& token_ids,
                                                      const std::vector<Segment>& segments,
                                                      bool parallel) {
    int d = params.config.dim;
    std::vector<std::vector<double>> out(segments.size());
    for (size_t s = 0; s < segments.size(); ++s)
        out[s].resize(static_cast<size_t>(segments[s].second - segments[s].first) * d);

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        auto [a, e] = segments[s];
        for (int t = a; t < e; ++t)
            detail::encode_token(params, token_ids, t, a, e,
                                 out[s].data() + static_cast<size_t>(t - a) * d);
    }
    return out;
}

std::vector<double> attention_scores_impl(const ParameterSet& params,
                                          const std::vector<double>& x, int n, bool parallel) {
    int d = params.config.dim;
    std::vector<double> alpha(n);
#pragma omp parallel for if (parallel)
    for (int t = 0; t < n; ++t)
        alpha[t] = detail::ffnn_scalar(params, "alpha", x.data() + static_cast<size_t>(t) * d, d);
    return alpha;
}

std::vector<double> span_representations_impl(const std::vector<double>& x,
                                              const std::vector<double>& alpha,
                                              const std::vector<Span>& spans, int dim,
                                              bool parallel) {
    std::vector<double> g(spans.size() * static_cast<size_t>(3 * dim));
#pragma omp parallel for if (parallel)
    for (int i = 0; i < static_cast<int>(spans.size()); ++i)
        detail::span_representation(x, alpha, spans[i], dim,
                                    g.data() + static_cast<size_t>(i) * 3 * dim);
    return g;
}

std::vector<double> mention_scores_impl(const ParameterSet& params, const std::vector<double>& g,
                                        int num_spans, bool parallel) {
    int width = 3 * params.config.dim;
    std::vector<double> s(num_spans);
#pragma omp parallel for if (parallel)
    for (int i = 0; i < num_spans; ++i)
        s[i] = detail::ffnn_scalar(params, "mention",
                                   g.data() + static_cast<size_t>(i) * width, width);
    return s;
}

AntecedentScores antecedent_scores_impl(const ParameterSet& params, const std::vector<double>& g,
                                        const std::vector<int>& kept,
                                        const std::vector<double>& all_mention_scores,
                                        int max_antecedents, bool parallel) {
    int d = params.config.dim;
    int width = 3 * d;
    int k = static_cast<int>(kept.size());
    AntecedentScores out;
    out.first.resize(k);
    out.scores.resize(k);
    for (int i = 0; i < k; ++i) {
        out.first[i] = max_antecedents < 0 ? 0 : std::max(0, i - max_antecedents);
        out.scores[i].resize(i - out.first[i]);
    }
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < k; ++i) {
        std::vector<double> buffer;
        const double* gi = g.data() + static_cast<size_t>(kept[i]) * width;
        for (int j = out.first[i]; j < i; ++j) {
            const double* gj = g.data() + static_cast<size_t>(kept[j]) * width;
            double sa = detail::antecedent_score(params, gi, gj, d, buffer);
            out.scores[i][j - out.first[i]] =
                all_mention_scores[kept[i]] + all_mention_scores[kept[j]] + sa;
        }
    }
    return out;
}

std::vector<double> encode_impl(const ParameterSet& params, const std::vector<int>& token_ids,
                                bool parallel) {
    int n = static_cast<int>(token_ids.size());
    auto segments = segment(n, params.config.max_segment);
    auto vecs = encode_segments_impl(params, token_ids, segments, parallel);
    return merge_max_context(vecs, segments, n, params.config.dim);
}

}  // namespace

namespace serial {

std::vector<std::vector<double>> encode_segments(const ParameterSet& params,
                                                 const std::vector<int>& token_ids,
                                                 const std::vector<Segment>& segments) {
    return encode_segments_impl(params, token_ids, segments, false);
}
std::vector<double> encode(const ParameterSet& params, const std::vector<int>& token_ids) {
    return encode_impl(params, token_ids, false);
}
std::vector<double> attention_scores(const ParameterSet& params, const std::vector<double>& x,
                                     int n) {
    return attention_scores_impl(params, x, n, false);
}
std::vector<double> span_representations(const std::vector<double>& x,
                                         const std::vector<double>& alpha,
                                         const std::vector<Span>& spans, int dim) {
    return span_representations_impl(x, alpha, spans, dim, false);
}
std::vector<double> mention_scores(const ParameterSet& params, const std::vector<double>& g,
                                   int num_spans) {
    return mention_scores_impl(params, g, num_spans, false);
}
AntecedentScores antecedent_scores(const ParameterSet& params, const std::vector<double>& g,
                                   const std::vector<int>& kept,
                                   const std::vector<double>& all_mention_scores,
                                   int max_antecedents) {
    return antecedent_scores_impl(params, g, kept, all_mention_scores, max_antecedents, false);
}

}  // namespace serial

namespace omp {

std::vector<std::vector<double>> encode_segments(const ParameterSet& params,
                                                 const std::vector<int>& token_ids,
                                                 const std::vector<Segment>& segments) {
    return encode_segments_impl(params, token_ids, segments, true);
}
std::vector<double> encode(const ParameterSet& params, const std::vector<int>& token_ids) {
    return encode_impl(params, token_ids, true);
}
std::vector<double> attention_scores(const ParameterSet& params, const std::vector<double>& x,
                                     int n) {
    return attention_scores_impl(params, x, n, true);
}
std::vector<double> span_representations(const std::vector<double>& x,
                                         const std::vector<double>& alpha,
                                         const std::vector<Span>& spans, int dim) {
    return span_representations_impl(x, alpha, spans, dim, true);
}
std::vector<double> mention_scores(const ParameterSet& params, const std::vector<double>& g,
                                   int num_spans) {
    return mention_scores_impl(params, g, num_spans, true);
}
AntecedentScores antecedent_scores(const ParameterSet& params, const std::vector<double>& g,
                                   const std::vector<int>& kept,
                                   const std::vector<double>& all_mention_scores,
                                   int max_antecedents) {
    return antecedent_scores_impl(params, g, kept, all_mention_scores, max_antecedents, true);
}

}  // namespace omp

}  // namespace coref::kernels

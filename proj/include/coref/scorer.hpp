#pragma once

#include <stdexcept>
#include <vector>

#include "coref/types.hpp"

namespace coref {

// Indices (ascending) of the top ceil(lambda * n_tokens) scores; ties keep
// the earlier index. Requires lambda in (0, 1].
std::vector<int> prune_top_spans(const std::vector<double>& scores, int n_tokens, double lambda);

// Coreference scores s(i,j) for kept spans in document order. Row i covers real
// antecedents j in [first[i], i); the dummy antecedent has fixed score 0 and
// is left implicit.
struct AntecedentScores {
    std::vector<int> first;
    std::vector<std::vector<double>> scores;

    int size() const { return static_cast<int>(scores.size()); }
};

// s(i,j) = s_m(i) + s_m(j) + s_a(i,j); s(i,epsilon) = 0.
// Throws std::invalid_argument when j >= i.
double coref_score(int i, int j, const std::vector<double>& mention_scores, double s_a);

}  // namespace coref

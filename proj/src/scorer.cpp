#include "coref/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coref {

std::vector<int> prune_top_spans(const std::vector<double>& scores, int n_tokens, double lambda) {
    if (lambda <= 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must be in (0,1]");
    size_t keep = std::min(scores.size(),
                           static_cast<size_t>(std::ceil(lambda * n_tokens)));
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    order.resize(keep);
    std::sort(order.begin(), order.end());
    return order;
}

double coref_score(int i, int j, const std::vector<double>& mention_scores, double s_a) {
    if (j >= i) throw std::invalid_argument("antecedent j must precede span i");
    return mention_scores[i] + mention_scores[j] + s_a;
}

}  // namespace coref

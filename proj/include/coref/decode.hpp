#pragma once

#include <vector>

#include "coref/scorer.hpp"
#include "coref/types.hpp"

namespace coref {

// argmax over Y(i) with s(i,epsilon) = 0; ties prefer epsilon, then the
// later (closer) real antecedent. -1 encodes epsilon.
std::vector<int> assign_antecedents(const AntecedentScores& scores);

// Transitive closure of the links (i, a_i); singleton components dropped.
ClusterSet build_clusters(const std::vector<int>& assignment, const std::vector<Span>& spans);

}  // namespace coref

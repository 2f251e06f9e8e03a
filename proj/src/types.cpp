#include "coref/types.hpp"

#include <algorithm>

namespace coref {

void normalize_clusters(ClusterSet& clusters) {
    for (auto& c : clusters) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::sort(clusters.begin(), clusters.end());
}

std::vector<Span> gold_mentions(const ClusterSet& clusters) {
    std::vector<Span> out;
    for (const auto& c : clusters) out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace coref

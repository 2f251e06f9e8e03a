#include "coref/segmenter.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace coref {

std::vector<Segment> segment(int n, int W) {
    assert(n >= 1 && W >= 2 && W % 2 == 0);
    std::vector<Segment> out;
    int stride = W / 2;
    for (int s = 0;; s += stride) {
        int e = std::min(s + W, n);
        out.emplace_back(s, e);
        if (e == n) break;
    }
    return out;
}

std::vector<int> merge_assignment(int n, const std::vector<Segment>& segments) {
    std::vector<int> owner(n, -1);
    std::vector<int> context(n, -1);
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        auto [a, e] = segments[s];
        for (int t = a; t < e; ++t) {
            int ctx = std::min(t - a, e - 1 - t);
            if (ctx > context[t]) {  // strict: ties keep the earlier segment
                context[t] = ctx;
                owner[t] = s;
            }
        }
    }
    for (int t = 0; t < n; ++t)
        if (owner[t] < 0) throw std::runtime_error("token " + std::to_string(t) + " uncovered");
    return owner;
}

std::vector<double> merge_max_context(const std::vector<std::vector<double>>& segment_vectors,
                                      const std::vector<Segment>& segments, int n, int dim) {
    if (segment_vectors.size() != segments.size())
        throw std::runtime_error("segment vector count mismatch");
    for (size_t s = 0; s < segments.size(); ++s) {
        int len = segments[s].second - segments[s].first;
        if (static_cast<int>(segment_vectors[s].size()) != len * dim)
            throw std::runtime_error("segment " + std::to_string(s) + " vector size mismatch");
    }
    auto owner = merge_assignment(n, segments);
    std::vector<double> out(static_cast<size_t>(n) * dim);
    for (int t = 0; t < n; ++t) {
        int s = owner[t];
        int off = t - segments[s].first;
        std::copy_n(segment_vectors[s].begin() + static_cast<size_t>(off) * dim, dim,
                    out.begin() + static_cast<size_t>(t) * dim);
    }
    return out;
}

}  // namespace coref

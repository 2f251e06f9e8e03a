#include "coref/decode.hpp"

#include <algorithm>
#include <numeric>

namespace coref {
namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> assign_antecedents(const AntecedentScores& scores) {
    std::vector<int> out(scores.size(), -1);
    for (int i = 0; i < scores.size(); ++i) {
        double best = 0.0;  // epsilon
        int best_j = -1;
        for (int j = i - 1; j >= scores.first[i]; --j) {
            double s = scores.scores[i][j - scores.first[i]];
            if (s > best) {
                best = s;
                best_j = j;
            }
        }
        out[i] = best_j;
    }
    return out;
}

ClusterSet build_clusters(const std::vector<int>& assignment, const std::vector<Span>& spans) {
    int k = static_cast<int>(assignment.size());
    UnionFind uf(k);
    for (int i = 0; i < k; ++i)
        if (assignment[i] >= 0) uf.unite(i, assignment[i]);

    std::vector<GoldCluster> by_root(k);
    for (int i = 0; i < k; ++i) by_root[uf.find(i)].push_back(spans[i]);

    ClusterSet out;
    for (auto& c : by_root)
        if (c.size() >= 2) out.push_back(std::move(c));
    normalize_clusters(out);
    return out;
}

}  // namespace coref

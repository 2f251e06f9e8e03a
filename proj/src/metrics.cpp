#include "coref/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include <json.hpp>

namespace coref {
namespace {

double f1_of(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

Prf make_prf(double pn, double pd, double rn, double rd) {
    Prf out;
    out.precision = pd > 0 ? pn / pd : 0.0;
    out.recall = rd > 0 ? rn / rd : 0.0;
    out.f1 = f1_of(out.precision, out.recall);
    return out;
}

std::map<Span, int> mention_index(const ClusterSet& clusters) {
    std::map<Span, int> idx;
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c)
        for (const Span& m : clusters[c]) idx[m] = c;
    return idx;
}

// MUC recall numerator/denominator: sum over key clusters of
// (|G| - partitions of G under the response), unaligned mentions counting
// as singleton parts.
void muc_counts(const ClusterSet& key, const ClusterSet& response, double& num, double& den) {
    auto resp_of = mention_index(response);
    for (const auto& g : key) {
        std::set<int> parts;
        int unmatched = 0;
        for (const Span& m : g) {
            auto it = resp_of.find(m);
            if (it == resp_of.end())
                ++unmatched;
            else
                parts.insert(it->second);
        }
        num += static_cast<double>(g.size()) - static_cast<double>(parts.size() + unmatched);
        den += static_cast<double>(g.size()) - 1.0;
    }
}

void b3_counts(const ClusterSet& key, const ClusterSet& response, double& num, double& den) {
    auto resp_of = mention_index(response);
    for (const auto& g : key) {
        for (const Span& m : g) {
            den += 1.0;
            auto it = resp_of.find(m);
            if (it == resp_of.end()) continue;
            const auto& r = response[it->second];
            int overlap = 0;
            for (const Span& x : g)
                if (std::binary_search(r.begin(), r.end(), x)) ++overlap;
            num += static_cast<double>(overlap) / static_cast<double>(g.size());
        }
    }
}

double phi4(const GoldCluster& a, const GoldCluster& b) {
    int overlap = 0;
    for (const Span& m : a)
        if (std::binary_search(b.begin(), b.end(), m)) ++overlap;
    return 2.0 * overlap / static_cast<double>(a.size() + b.size());
}

double ceaf_similarity(const ClusterSet& gold, const ClusterSet& system) {
    if (gold.empty() || system.empty()) return 0.0;
    std::vector<std::vector<double>> sim(gold.size(), std::vector<double>(system.size()));
    for (size_t i = 0; i < gold.size(); ++i)
        for (size_t j = 0; j < system.size(); ++j) sim[i][j] = phi4(gold[i], system[j]);
    return max_assignment(sim);
}

}  // namespace

double max_assignment(const std::vector<std::vector<double>>& similarity) {
    int rows = static_cast<int>(similarity.size());
    if (rows == 0) return 0.0;
    int cols = static_cast<int>(similarity[0].size());
    int n = std::max(rows, cols);

    double max_sim = 0.0;
    for (const auto& row : similarity)
        for (double v : row) max_sim = std::max(max_sim, v);

    // Square minimization problem; padding cells carry similarity 0.
    auto cost = [&](int i, int j) {
        double s = (i < rows && j < cols) ? similarity[i][j] : 0.0;
        return max_sim - s;
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        int i = p[j];
        if (i >= 1 && i <= rows && j <= cols) total += similarity[i - 1][j - 1];
    }
    return total;
}

void CorefScorer::add(const ClusterSet& gold_in, const ClusterSet& system_in) {
    // binary_search below requires sorted mentions.
    ClusterSet gold(gold_in), system(system_in);
    normalize_clusters(gold);
    normalize_clusters(system);
    muc_counts(gold, system, muc_rn_, muc_rd_);
    muc_counts(system, gold, muc_pn_, muc_pd_);
    b3_counts(gold, system, b3_rn_, b3_rd_);
    b3_counts(system, gold, b3_pn_, b3_pd_);
    ceaf_phi_ += ceaf_similarity(gold, system);
    ceaf_gold_ += static_cast<double>(gold.size());
    ceaf_sys_ += static_cast<double>(system.size());
}

MetricReport CorefScorer::report() const {
    MetricReport r;
    r.muc = make_prf(muc_pn_, muc_pd_, muc_rn_, muc_rd_);
    r.b_cubed = make_prf(b3_pn_, b3_pd_, b3_rn_, b3_rd_);
    r.ceaf = make_prf(ceaf_phi_, ceaf_sys_, ceaf_phi_, ceaf_gold_);
    r.avg_f1 = average_f1(r);
    return r;
}

double average_f1(const MetricReport& r) {
    return (r.muc.f1 + r.b_cubed.f1 + r.ceaf.f1) / 3.0;
}

Prf muc(const ClusterSet& gold, const ClusterSet& system) {
    CorefScorer s;
    s.add(gold, system);
    return s.report().muc;
}

Prf b_cubed(const ClusterSet& gold, const ClusterSet& system) {
    CorefScorer s;
    s.add(gold, system);
    return s.report().b_cubed;
}

Prf ceaf_phi4(const ClusterSet& gold, const ClusterSet& system) {
    CorefScorer s;
    s.add(gold, system);
    return s.report().ceaf;
}

void MentionRecall::add(const std::vector<Span>& gold, const std::vector<Span>& proposed) {
    ++num_docs_;
    proposed_ += static_cast<long long>(proposed.size());
    gold_ += static_cast<long long>(gold.size());
    for (const Span& m : gold)
        if (std::binary_search(proposed.begin(), proposed.end(), m)) ++matched_;
}

RecallReport MentionRecall::report() const {
    RecallReport r;
    r.spans_proposed_per_doc =
        num_docs_ > 0 ? static_cast<double>(proposed_) / static_cast<double>(num_docs_) : 0.0;
    r.gold_mention_recall =
        gold_ > 0 ? static_cast<double>(matched_) / static_cast<double>(gold_) : 0.0;
    return r;
}

std::string format_report_table(const MetricReport& r) {
    char buf[512];
    std::string out;
    out += "            |        MUC        |      B-CUBED      |     CEAF_phi4     |\n";
    out += "            |    P      R     F1|    P      R     F1|    P      R     F1| Avg. F1\n";
    std::snprintf(buf, sizeof(buf),
                  "  scores    |%6.2f %6.2f %6.2f|%6.2f %6.2f %6.2f|%6.2f %6.2f %6.2f|%8.2f\n",
                  100 * r.muc.precision, 100 * r.muc.recall, 100 * r.muc.f1,
                  100 * r.b_cubed.precision, 100 * r.b_cubed.recall, 100 * r.b_cubed.f1,
                  100 * r.ceaf.precision, 100 * r.ceaf.recall, 100 * r.ceaf.f1, 100 * r.avg_f1);
    out += buf;
    return out;
}

std::string format_report_json(const MetricReport& r) {
    nlohmann::json j{
        {"muc", {{"precision", r.muc.precision}, {"recall", r.muc.recall}, {"f1", r.muc.f1}}},
        {"b_cubed",
         {{"precision", r.b_cubed.precision},
          {"recall", r.b_cubed.recall},
          {"f1", r.b_cubed.f1}}},
        {"ceaf_phi4",
         {{"precision", r.ceaf.precision}, {"recall", r.ceaf.recall}, {"f1", r.ceaf.f1}}},
        {"avg_f1", r.avg_f1}};
    return j.dump(2);
}

}  // namespace coref

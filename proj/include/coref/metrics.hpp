#pragma once

#include <string>
#include <vector>

#include "coref/types.hpp"

namespace coref {

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricReport {
    Prf muc;
    Prf b_cubed;
    Prf ceaf;
    double avg_f1 = 0.0;
};

// Pools per-document numerators/denominators across documents before the
// final ratios, matching the reference CoNLL scorer's aggregation.
class CorefScorer {
  public:
    void add(const ClusterSet& gold, const ClusterSet& system);
    MetricReport report() const;

  private:
    double muc_rn_ = 0, muc_rd_ = 0, muc_pn_ = 0, muc_pd_ = 0;
    double b3_rn_ = 0, b3_rd_ = 0, b3_pn_ = 0, b3_pd_ = 0;
    double ceaf_phi_ = 0, ceaf_gold_ = 0, ceaf_sys_ = 0;
};

// Single-document convenience wrappers.
Prf muc(const ClusterSet& gold, const ClusterSet& system);
Prf b_cubed(const ClusterSet& gold, const ClusterSet& system);
Prf ceaf_phi4(const ClusterSet& gold, const ClusterSet& system);

double average_f1(const MetricReport& r);

// Maximum-weight one-to-one assignment over a (possibly rectangular)
// similarity matrix; Kuhn-Munkres, O(n^3).
double max_assignment(const std::vector<std::vector<double>>& similarity);

struct RecallReport {
    double spans_proposed_per_doc = 0.0;
    double gold_mention_recall = 0.0;
};

// Exact-span recall of gold mentions within the proposed (pruned) spans,
// accumulated across documents.
class MentionRecall {
  public:
    void add(const std::vector<Span>& gold, const std::vector<Span>& proposed);
    RecallReport report() const;

  private:
    long long num_docs_ = 0, proposed_ = 0, matched_ = 0, gold_ = 0;
};

std::string format_report_table(const MetricReport& r);
std::string format_report_json(const MetricReport& r);

}  // namespace coref

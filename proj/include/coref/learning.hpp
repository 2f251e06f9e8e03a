#pragma once

#include <iosfwd>
#include <vector>

#include "coref/model.hpp"
#include "coref/params.hpp"
#include "coref/types.hpp"

namespace coref {

struct TrainConfig {
    double lr_encoder = 1e-2;
    double lr_head = 1e-2;
    double lr_decay = 1.0;  // multiplicative, per epoch
    int epochs = 0;
    ModelConfig model;
};

// Plain-value losses mirroring the recorded tape nodes; used for reports
// and as an independent route in tests.
//
// Binary cross-entropy with logits, summed over the supervision set;
// probabilities clamped at 1e-12 before the log.
double detection_loss_value(const std::vector<double>& mention_scores,
                            const std::vector<char>& labels);
// Negative marginal log-likelihood over Y(i) including s(i,epsilon)=0.
// cluster_ids holds the gold cluster of each kept span, -1 for none.
double marginal_loss_value(const AntecedentScores& scores, const std::vector<int>& cluster_ids);

struct TrainStats {
    double final_loss = 0.0;
};

// Phase 1: minimize the detection loss only.
ParameterSet pretrain_mentions(const std::vector<Document>& docs, const TrainConfig& config,
                               ParameterSet init, std::ostream* log = nullptr,
                               TrainStats* stats = nullptr);
// Phase 2: minimize the antecedent marginal loss end to end.
ParameterSet train(const std::vector<Document>& docs, const TrainConfig& config,
                   ParameterSet init, std::ostream* log = nullptr, TrainStats* stats = nullptr);

}  // namespace coref

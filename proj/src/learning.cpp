#include "coref/learning.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace coref {
namespace {

constexpr double kProbFloor = 1e-12;

double logsumexp(const std::vector<double>& z) {
    double m = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    for (double v : z) s += std::exp(v - m);
    return m + std::log(s);
}

enum class Phase { kDetect, kLink };

void check_finite(const GradientMap& grads) {
    for (const auto& [name, g] : grads)
        for (double v : g)
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite gradient in parameter '" + name + "'");
}

ParameterSet run_phase(Phase phase, const std::vector<Document>& docs, const TrainConfig& config,
                       ParameterSet params, std::ostream* log, TrainStats* stats) {
    if (docs.empty()) throw std::runtime_error("no training documents");
    double lr_enc = config.lr_encoder;
    double lr_head = config.lr_head;
    const char* phase_name = phase == Phase::kDetect ? "pretrain" : "train";

    double epoch_loss = 0.0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        // Full-batch step: per-document gradients are independent and
        // reduced in document order, so the update is deterministic.
        std::vector<GradientMap> doc_grads(docs.size());
        std::vector<double> doc_loss(docs.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < static_cast<int>(docs.size()); ++i) {
            Tape tape(params);
            ForwardPass fp = model_forward(tape, params, docs[i]);
            Tape::NodeId loss =
                phase == Phase::kDetect ? fp.detection_loss : fp.marginal_loss;
            doc_loss[i] = tape.scalar(loss);
            tape.backward(loss, doc_grads[i]);
        }

        GradientMap grads;
        epoch_loss = 0.0;
        for (size_t i = 0; i < docs.size(); ++i) {
            epoch_loss += doc_loss[i];
            for (auto& [name, g] : doc_grads[i]) {
                auto& dst = grads[name];
                if (dst.empty()) dst.assign(g.size(), 0.0);
                for (size_t k = 0; k < g.size(); ++k) dst[k] += g[k];
            }
        }
        if (!std::isfinite(epoch_loss))
            throw std::runtime_error(std::string("non-finite loss in phase ") + phase_name +
                                     " at epoch " + std::to_string(epoch));
        check_finite(grads);

        for (auto& [name, g] : grads) {
            double lr = name.rfind("encoder.", 0) == 0 ? lr_enc : lr_head;
            auto& p = params.arrays.at(name).data;
            for (size_t k = 0; k < g.size(); ++k) p[k] -= lr * g[k];
        }
        if (log)
            *log << "epoch " << epoch << " phase " << phase_name << " loss " << epoch_loss
                 << " lr_encoder " << lr_enc << " lr_head " << lr_head << "\n";
        lr_enc *= config.lr_decay;
        lr_head *= config.lr_decay;
    }
    if (stats) stats->final_loss = epoch_loss;
    return params;
}

}  // namespace

double detection_loss_value(const std::vector<double>& mention_scores,
                            const std::vector<char>& labels) {
    double loss = 0.0;
    for (size_t i = 0; i < mention_scores.size(); ++i) {
        double p = 1.0 / (1.0 + std::exp(-mention_scores[i]));
        p = std::clamp(p, kProbFloor, 1.0 - kProbFloor);
        loss -= labels[i] ? std::log(p) : std::log(1.0 - p);
    }
    return loss;
}

double marginal_loss_value(const AntecedentScores& scores, const std::vector<int>& cluster_ids) {
    double loss = 0.0;
    for (int i = 0; i < scores.size(); ++i) {
        std::vector<double> all{0.0};
        std::vector<double> gold;
        for (int j = scores.first[i]; j < i; ++j) {
            double s = scores.scores[i][j - scores.first[i]];
            all.push_back(s);
            if (cluster_ids[i] >= 0 && cluster_ids[j] == cluster_ids[i]) gold.push_back(s);
        }
        if (gold.empty()) gold.push_back(0.0);  // GOLD(i) = {epsilon}
        loss += logsumexp(all) - logsumexp(gold);
    }
    return loss;
}

ParameterSet pretrain_mentions(const std::vector<Document>& docs, const TrainConfig& config,
                               ParameterSet init, std::ostream* log, TrainStats* stats) {
    return run_phase(Phase::kDetect, docs, config, std::move(init), log, stats);
}

ParameterSet train(const std::vector<Document>& docs, const TrainConfig& config,
                   ParameterSet init, std::ostream* log, TrainStats* stats) {
    return run_phase(Phase::kLink, docs, config, std::move(init), log, stats);
}

}  // namespace coref

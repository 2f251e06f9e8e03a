#include "coref/model.hpp"

#include <map>

#include "coref/kernels.hpp"
#include "coref/segmenter.hpp"
#include "coref/spans.hpp"

namespace coref {
namespace {

Tape::NodeId ffnn(Tape& tape, const std::string& prefix, Tape::NodeId x, int in, int hidden) {
    auto h0 = tape.relu(tape.linear(tape.param(prefix + ".w0"), tape.param(prefix + ".b0"), x,
                                    hidden, in));
    auto h1 = tape.relu(tape.linear(tape.param(prefix + ".w1"), tape.param(prefix + ".b1"), h0,
                                    hidden, hidden));
    return tape.linear(tape.param(prefix + ".w2"), tape.param(prefix + ".b2"), h1, 1, hidden);
}

}  // namespace

ForwardPass model_forward(Tape& tape, const ParameterSet& params, const Document& doc) {
    const ModelConfig& cfg = params.config;
    int n = doc.num_tokens();
    int d = cfg.dim;

    auto token_ids = kernels::hash_tokens(doc, cfg.vocab);
    auto segments = segment(n, cfg.max_segment);
    auto owner = merge_assignment(n, segments);

    // Token vectors from each token's max-context segment. Only the winning
    // segment's copy feeds the loss, so the others need not be recorded.
    auto emb = tape.param("encoder.embeddings");
    auto mix_w = tape.param("encoder.mix_w");
    auto mix_b = tape.param("encoder.mix_b");
    std::vector<Tape::NodeId> emb_rows(n);
    for (int t = 0; t < n; ++t) emb_rows[t] = tape.row(emb, token_ids[t], d);
    std::vector<Tape::NodeId> x(n);
    for (int t = 0; t < n; ++t) {
        auto [a, e] = segments[owner[t]];
        std::vector<Tape::NodeId> window;
        for (int u = std::max(a, t - 1); u <= std::min(e - 1, t + 1); ++u)
            window.push_back(emb_rows[u]);
        x[t] = tape.tanh_op(tape.linear(mix_w, mix_b, tape.mean(window), d, d));
    }

    ForwardPass fp;
    fp.candidates = enumerate_spans(doc, cfg.max_span_length);
    int num_spans = static_cast<int>(fp.candidates.size());

    // alpha_t only for tokens inside some candidate span.
    std::vector<Tape::NodeId> alpha(n, -1);
    for (const Span& s : fp.candidates)
        for (int t = s.start; t <= s.end; ++t)
            if (alpha[t] < 0) alpha[t] = ffnn(tape, "alpha", x[t], d, cfg.hidden);

    std::vector<Tape::NodeId> g(num_spans);
    std::vector<Tape::NodeId> sm(num_spans);
    fp.mention_scores.resize(num_spans);
    for (int i = 0; i < num_spans; ++i) {
        const Span& s = fp.candidates[i];
        std::vector<Tape::NodeId> a_nodes, x_nodes;
        for (int t = s.start; t <= s.end; ++t) {
            a_nodes.push_back(alpha[t]);
            x_nodes.push_back(x[t]);
        }
        auto beta = tape.softmax(tape.stack_scalars(a_nodes));
        auto pooled = tape.weighted_sum(beta, x_nodes);
        g[i] = tape.concat({x[s.start], x[s.end], pooled});
        sm[i] = ffnn(tape, "mention", g[i], 3 * d, cfg.hidden);
        fp.mention_scores[i] = tape.scalar(sm[i]);
    }

    fp.kept = prune_top_spans(fp.mention_scores, n, cfg.prune_ratio);
    int k = static_cast<int>(fp.kept.size());

    // Gold labels: candidate -> cluster id (or -1).
    std::map<Span, int> cluster_of;
    for (int c = 0; c < static_cast<int>(doc.gold_clusters.size()); ++c)
        for (const Span& m : doc.gold_clusters[c]) cluster_of[m] = c;

    // Detection loss (binary cross-entropy over the supervision set).
    std::vector<Tape::NodeId> detect_terms;
    if (cfg.detect_all_spans) {
        for (int i = 0; i < num_spans; ++i)
            detect_terms.push_back(
                tape.bce_with_logits(sm[i], cluster_of.count(fp.candidates[i]) ? 1.0 : 0.0));
    } else {
        for (int i : fp.kept)
            detect_terms.push_back(
                tape.bce_with_logits(sm[i], cluster_of.count(fp.candidates[i]) ? 1.0 : 0.0));
    }
    fp.detection_loss = tape.sum_scalars(detect_terms);

    // Antecedent scores and marginal log-likelihood over kept spans.
    fp.antecedents.first.resize(k);
    fp.antecedents.scores.resize(k);
    std::vector<Tape::NodeId> marginal_terms;
    for (int i = 0; i < k; ++i) {
        int first = cfg.max_antecedents < 0 ? 0 : std::max(0, i - cfg.max_antecedents);
        fp.antecedents.first[i] = first;
        int ci = cluster_of.count(fp.candidates[fp.kept[i]])
                     ? cluster_of[fp.candidates[fp.kept[i]]]
                     : -1;
        std::vector<Tape::NodeId> logits;
        std::vector<char> gold;
        for (int j = first; j < i; ++j) {
            auto pair = tape.concat(
                {g[fp.kept[i]], g[fp.kept[j]], tape.hadamard(g[fp.kept[i]], g[fp.kept[j]])});
            auto sa = ffnn(tape, "antecedent", pair, 9 * d, cfg.hidden);
            auto s_ij = tape.add(tape.add(sm[fp.kept[i]], sm[fp.kept[j]]), sa);
            logits.push_back(s_ij);
            int cj = cluster_of.count(fp.candidates[fp.kept[j]])
                         ? cluster_of[fp.candidates[fp.kept[j]]]
                         : -1;
            gold.push_back(ci >= 0 && cj == ci ? 1 : 0);
            fp.antecedents.scores[i].push_back(tape.scalar(s_ij));
        }
        bool any_gold_antecedent = false;
        for (char c : gold) any_gold_antecedent |= (c != 0);
        // GOLD(i) = {epsilon} when i is not a mention or every gold
        // antecedent was pruned.
        marginal_terms.push_back(tape.marginal_nll(logits, gold, !any_gold_antecedent));
    }
    fp.marginal_loss = tape.sum_scalars(marginal_terms);
    return fp;
}

}  // namespace coref

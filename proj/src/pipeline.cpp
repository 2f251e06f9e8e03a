#include "coref/pipeline.hpp"

#include "coref/decode.hpp"
#include "coref/kernels.hpp"
#include "coref/spans.hpp"

namespace coref {

DocPrediction predict_document(const ParameterSet& params, const Document& doc, bool parallel) {
    namespace ks = kernels::serial;
    namespace ko = kernels::omp;
    const ModelConfig& cfg = params.config;
    int n = doc.num_tokens();
    int d = cfg.dim;

    auto ids = kernels::hash_tokens(doc, cfg.vocab);
    auto x = parallel ? ko::encode(params, ids) : ks::encode(params, ids);
    auto alpha = parallel ? ko::attention_scores(params, x, n)
                          : ks::attention_scores(params, x, n);
    auto spans = enumerate_spans(doc, cfg.max_span_length);
    auto g = parallel ? ko::span_representations(x, alpha, spans, d)
                      : ks::span_representations(x, alpha, spans, d);
    auto sm = parallel ? ko::mention_scores(params, g, static_cast<int>(spans.size()))
                       : ks::mention_scores(params, g, static_cast<int>(spans.size()));
    auto kept = prune_top_spans(sm, n, cfg.prune_ratio);
    auto scores = parallel
                      ? ko::antecedent_scores(params, g, kept, sm, cfg.max_antecedents)
                      : ks::antecedent_scores(params, g, kept, sm, cfg.max_antecedents);

    DocPrediction out;
    out.proposed.reserve(kept.size());
    for (int i : kept) out.proposed.push_back(spans[i]);
    out.clusters = build_clusters(assign_antecedents(scores), out.proposed);
    return out;
}

EvalResult evaluate_documents(const ParameterSet& params, const std::vector<Document>& docs,
                              bool parallel, std::vector<DocPrediction>* predictions) {
    CorefScorer scorer;
    MentionRecall recall;
    for (const Document& doc : docs) {
        DocPrediction pred = predict_document(params, doc, parallel);
        scorer.add(doc.gold_clusters, pred.clusters);
        recall.add(gold_mentions(doc.gold_clusters), pred.proposed);
        if (predictions) predictions->push_back(std::move(pred));
    }
    EvalResult r;
    r.metrics = scorer.report();
    r.recall = recall.report();
    return r;
}

}  // namespace coref

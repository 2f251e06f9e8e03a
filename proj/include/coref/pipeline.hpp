#pragma once

#include <vector>

#include "coref/metrics.hpp"
#include "coref/params.hpp"
#include "coref/types.hpp"

namespace coref {

struct DocPrediction {
    std::vector<Span> proposed;  // pruned spans, start-then-end order
    ClusterSet clusters;
};

// Gradient-free inference: encode -> spans -> prune -> score -> decode.
DocPrediction predict_document(const ParameterSet& params, const Document& doc,
                               bool parallel = true);

struct EvalResult {
    MetricReport metrics;
    RecallReport recall;
};

EvalResult evaluate_documents(const ParameterSet& params, const std::vector<Document>& docs,
                              bool parallel = true,
                              std::vector<DocPrediction>* predictions = nullptr);

}  // namespace coref

#pragma once

#include <vector>

#include "coref/autodiff.hpp"
#include "coref/params.hpp"
#include "coref/scorer.hpp"
#include "coref/types.hpp"

namespace coref {

// One recorded forward pass over a document: candidate spans, the pruned
// set, both loss nodes, and plain-value score copies for decoding.
struct ForwardPass {
    std::vector<Span> candidates;       // start-then-end order
    std::vector<int> kept;              // indices into candidates, ascending
    std::vector<double> mention_scores; // per candidate
    AntecedentScores antecedents;       // values of s(i,j) over kept spans
    Tape::NodeId detection_loss = -1;
    Tape::NodeId marginal_loss = -1;
};

// Records encode -> span representations -> mention scoring -> pruning ->
// antecedent scoring -> both losses on the tape. Gradients do not flow
// through the discrete top-k selection.
ForwardPass model_forward(Tape& tape, const ParameterSet& params, const Document& doc);

}  // namespace coref

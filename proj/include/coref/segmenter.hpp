#pragma once

#include <utility>
#include <vector>

namespace coref {

using Segment = std::pair<int, int>;  // half-open [start, end)

// Overlapping segments of length W at stride W/2; the last segment is
// truncated at n and segments adding no new tokens are suppressed.
// Requires n >= 1, W >= 2 and even.
std::vector<Segment> segment(int n, int W);

// For each token, the index of the segment giving it maximum context
// (max over segments of min(left, right) distance to the segment edge),
// ties broken toward the earlier segment.
std::vector<int> merge_assignment(int n, const std::vector<Segment>& segments);

// Selects each token's final vector from independently encoded segments.
// segment_vectors[s] holds dim doubles per token covered by segments[s].
std::vector<double> merge_max_context(const std::vector<std::vector<double>>& segment_vectors,
                                      const std::vector<Segment>& segments, int n, int dim);

}  // namespace coref

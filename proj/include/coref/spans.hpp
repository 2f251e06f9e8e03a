#pragma once

#include <vector>

#include "coref/types.hpp"

namespace coref {

// All candidate spans: within one sentence, length <= max_length, free of
// synthetic tokens, sorted by start then end.
std::vector<Span> enumerate_spans(const Document& doc, int max_length);

}  // namespace coref

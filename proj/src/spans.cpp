#include "coref/spans.hpp"

#include <algorithm>

namespace coref {

std::vector<Span> enumerate_spans(const Document& doc, int max_length) {
    std::vector<Span> out;
    for (auto [a, e] : doc.sentence_boundaries) {
        for (int start = a; start < e; ++start) {
            if (doc.tokens[start].synthetic) continue;
            int limit = std::min(e, start + max_length);
            for (int end = start; end < limit; ++end) {
                if (doc.tokens[end].synthetic) break;
                out.push_back({start, end});
            }
        }
    }
    return out;
}

}  // namespace coref

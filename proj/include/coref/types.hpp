#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace coref {

// Token span with inclusive end index. Ordered by start, then end.
struct Span {
    int start = 0;
    int end = 0;

    auto operator<=>(const Span&) const = default;
    int length() const { return end - start + 1; }
};

struct Token {
    std::string text;
    int sentence_index = 0;
    bool synthetic = false;  // inserted speaker-prefix token

    bool operator==(const Token&) const = default;
};

// A coreference chain: set of mention spans (kept sorted, distinct).
using GoldCluster = std::vector<Span>;

// A partition of mentions into chains, used for both gold and predictions.
using ClusterSet = std::vector<GoldCluster>;

struct Document {
    std::string doc_key;
    std::vector<Token> tokens;
    // Half-open [start, end) token ranges, contiguous and covering all tokens.
    std::vector<std::pair<int, int>> sentence_boundaries;
    // One speaker name per sentence (utterance).
    std::vector<std::string> speakers;
    ClusterSet gold_clusters;

    bool operator==(const Document&) const = default;
    int num_tokens() const { return static_cast<int>(tokens.size()); }
};

// Sorts mentions within clusters and clusters by first mention.
void normalize_clusters(ClusterSet& clusters);

// Flattened, sorted list of all gold mention spans.
std::vector<Span> gold_mentions(const ClusterSet& clusters);

}  // namespace coref

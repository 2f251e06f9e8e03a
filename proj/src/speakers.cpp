#include "coref/speakers.hpp"

#include <sstream>

namespace coref {
namespace {

std::vector<std::string> name_tokens(const std::string& speaker) {
    std::istringstream ss(speaker.empty() ? std::string(kUnknownSpeaker) : speaker);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    if (out.empty()) out.emplace_back(kUnknownSpeaker);
    return out;
}

}  // namespace

Document insert_speakers(const Document& doc) {
    for (const auto& t : doc.tokens)
        if (t.synthetic) return doc;  // already processed

    Document out;
    out.doc_key = doc.doc_key;
    out.speakers = doc.speakers;

    // Cumulative shift applied to original token indices, per sentence.
    std::vector<int> shift(doc.sentence_boundaries.size() + 1, 0);

    std::string prev_speaker;
    bool first = true;
    for (size_t s = 0; s < doc.sentence_boundaries.size(); ++s) {
        auto [a, e] = doc.sentence_boundaries[s];
        std::string speaker = s < doc.speakers.size() ? doc.speakers[s] : std::string();
        if (speaker.empty()) speaker = kUnknownSpeaker;

        int start = out.num_tokens();
        if (first || speaker != prev_speaker) {
            for (const auto& name : name_tokens(speaker))
                out.tokens.push_back({name, static_cast<int>(s), true});
            out.tokens.push_back({kSpeakerSeparator, static_cast<int>(s), true});
        }
        first = false;
        prev_speaker = speaker;

        shift[s] = out.num_tokens() - a;
        for (int t = a; t < e; ++t)
            out.tokens.push_back({doc.tokens[t].text, static_cast<int>(s), false});
        out.sentence_boundaries.emplace_back(start, out.num_tokens());
    }

    auto sentence_of = [&](int t) {
        return doc.tokens[t].sentence_index;
    };
    for (const auto& cluster : doc.gold_clusters) {
        GoldCluster mapped;
        for (const Span& m : cluster) {
            int d = shift[sentence_of(m.start)];
            mapped.push_back({m.start + d, m.end + d});
        }
        out.gold_clusters.push_back(std::move(mapped));
    }
    normalize_clusters(out.gold_clusters);
    return out;
}

}  // namespace coref

#include "coref/jsonl.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace coref {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& doc_key, const std::string& msg) {
    throw FormatError("doc '" + doc_key + "': " + msg);
}

Document from_json(const json& j) {
    std::string key = j.value("doc_key", std::string());
    for (const char* field : {"doc_key", "sentences", "speakers", "clusters"}) {
        if (!j.contains(field)) fail(key, std::string("missing field '") + field + "'");
    }
    Document doc;
    doc.doc_key = key;
    const auto& sentences = j["sentences"];
    const auto& speakers = j["speakers"];
    if (!sentences.is_array() || !speakers.is_array() || speakers.size() != sentences.size())
        fail(key, "field 'speakers' must parallel 'sentences'");

    const json* synthetic = j.contains("synthetic") ? &j["synthetic"] : nullptr;
    if (synthetic && (!synthetic->is_array() || synthetic->size() != sentences.size()))
        fail(key, "field 'synthetic' must parallel 'sentences'");

    for (size_t s = 0; s < sentences.size(); ++s) {
        const auto& sent = sentences[s];
        const auto& spk = speakers[s];
        if (!sent.is_array() || !spk.is_array() || spk.size() != sent.size())
            fail(key, "ragged speakers/sentences parallelism at sentence " + std::to_string(s));
        const json* syn = synthetic ? &(*synthetic)[s] : nullptr;
        if (syn && syn->size() != sent.size())
            fail(key, "ragged 'synthetic' at sentence " + std::to_string(s));

        int start = doc.num_tokens();
        for (size_t t = 0; t < sent.size(); ++t) {
            if (!sent[t].is_string() || sent[t].get<std::string>().empty())
                fail(key, "empty or non-string token in sentence " + std::to_string(s));
            bool is_syn = syn && (*syn)[t].get<int>() != 0;
            doc.tokens.push_back({sent[t].get<std::string>(), static_cast<int>(s), is_syn});
        }
        doc.sentence_boundaries.emplace_back(start, doc.num_tokens());
        // Speaker is constant per utterance; take the first token's entry.
        doc.speakers.push_back(sent.empty() ? std::string() : spk[0].get<std::string>());
    }

    for (const auto& cluster : j["clusters"]) {
        GoldCluster out;
        for (const auto& m : cluster) {
            if (!m.is_array() || m.size() != 2)
                fail(key, "cluster mention must be a [start,end] pair");
            int a = m[0].get<int>(), b = m[1].get<int>();
            if (a < 0 || b < a || b >= doc.num_tokens())
                fail(key, "cluster index [" + std::to_string(a) + "," + std::to_string(b) +
                              "] out of range for field 'clusters'");
            out.push_back({a, b});
        }
        doc.gold_clusters.push_back(std::move(out));
    }
    normalize_clusters(doc.gold_clusters);
    return doc;
}

json to_json(const Document& doc) {
    json sentences = json::array();
    json speakers = json::array();
    json synthetic = json::array();
    bool any_synthetic = false;
    for (size_t s = 0; s < doc.sentence_boundaries.size(); ++s) {
        auto [a, e] = doc.sentence_boundaries[s];
        json sent = json::array(), spk = json::array(), syn = json::array();
        for (int t = a; t < e; ++t) {
            sent.push_back(doc.tokens[t].text);
            spk.push_back(s < doc.speakers.size() ? doc.speakers[s] : std::string());
            syn.push_back(doc.tokens[t].synthetic ? 1 : 0);
            any_synthetic |= doc.tokens[t].synthetic;
        }
        sentences.push_back(std::move(sent));
        speakers.push_back(std::move(spk));
        synthetic.push_back(std::move(syn));
    }
    json clusters = json::array();
    for (const auto& c : doc.gold_clusters) {
        json cl = json::array();
        for (const Span& m : c) cl.push_back(json::array({m.start, m.end}));
        clusters.push_back(std::move(cl));
    }
    json j{{"doc_key", doc.doc_key},
           {"sentences", std::move(sentences)},
           {"speakers", std::move(speakers)},
           {"clusters", std::move(clusters)}};
    if (any_synthetic) j["synthetic"] = std::move(synthetic);
    return j;
}

}  // namespace

std::vector<Document> read_jsonlines(std::istream& in) {
    std::vector<Document> docs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw FormatError(std::string("invalid JSON line: ") + e.what());
        }
        try {
            docs.push_back(from_json(j));
        } catch (const json::exception& e) {
            throw FormatError("doc '" + j.value("doc_key", std::string()) + "': " + e.what());
        }
    }
    return docs;
}

void write_jsonlines(const std::vector<Document>& docs, std::ostream& out) {
    for (const auto& doc : docs) out << to_json(doc).dump() << "\n";
}

}  // namespace coref

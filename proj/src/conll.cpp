#include "coref/conll.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace coref {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

struct DocBuilder {
    std::string doc_key;
    Document doc;
    int sentence_start = 0;
    std::string sentence_speaker;
    bool in_sentence = false;
    // chain id -> stack of open start indices
    std::map<int, std::vector<int>> open;
    std::map<int, GoldCluster> chains;

    void end_sentence(int line_no) {
        if (!in_sentence) return;
        for (const auto& [id, stack] : open) {
            if (!stack.empty())
                fail(line_no, "mention of chain " + std::to_string(id) +
                                  " crosses a sentence boundary");
        }
        doc.sentence_boundaries.emplace_back(sentence_start, doc.num_tokens());
        doc.speakers.push_back(sentence_speaker);
        sentence_start = doc.num_tokens();
        in_sentence = false;
    }

    Document finish(int line_no) {
        end_sentence(line_no);
        doc.doc_key = doc_key;
        for (auto& [id, cluster] : chains) doc.gold_clusters.push_back(std::move(cluster));
        normalize_clusters(doc.gold_clusters);
        return std::move(doc);
    }
};

int parse_chain_id(const std::string& s, int line_no) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        fail(line_no, "bad coreference chain id '" + s + "'");
    return std::stoi(s);
}

}  // namespace

std::vector<Document> parse_conll(std::istream& in) {
    std::vector<Document> docs;
    std::string line;
    int line_no = 0;
    DocBuilder* b = nullptr;
    DocBuilder builder;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("#begin document", 0) == 0) {
            if (b) fail(line_no, "nested #begin document");
            auto lp = line.find('(');
            auto rp = line.find(')');
            if (lp == std::string::npos || rp == std::string::npos || rp < lp)
                fail(line_no, "malformed #begin document header");
            std::string doc_id = line.substr(lp + 1, rp - lp - 1);
            int part = 0;
            auto pp = line.find("part", rp);
            if (pp != std::string::npos) part = std::stoi(line.substr(pp + 4));
            builder = DocBuilder{};
            builder.doc_key = doc_id + "_" + std::to_string(part);
            b = &builder;
            continue;
        }
        if (line.rfind("#end document", 0) == 0) {
            if (!b) fail(line_no, "#end document without #begin");
            docs.push_back(b->finish(line_no));
            b = nullptr;
            continue;
        }
        if (!b) {
            if (line.empty() || line[0] == '#') continue;
            fail(line_no, "token line outside document");
        }
        if (line.empty()) {
            b->end_sentence(line_no);
            continue;
        }
        auto cols = split_ws(line);
        if (cols.size() < 12)
            fail(line_no, "expected at least 12 columns, got " + std::to_string(cols.size()));

        if (!b->in_sentence) {
            b->in_sentence = true;
            b->sentence_speaker = cols[9] == "-" ? std::string() : cols[9];
        }
        int t = b->doc.num_tokens();
        b->doc.tokens.push_back(
            {cols[3], static_cast<int>(b->doc.sentence_boundaries.size()), false});

        const std::string& tag = cols.back();
        if (tag != "-") {
            for (const auto& item : split_on(tag, '|')) {
                if (item.empty()) fail(line_no, "empty coreference tag item");
                bool opens = item.front() == '(';
                bool closes = item.back() == ')';
                std::string id_str = item.substr(opens ? 1 : 0,
                                                 item.size() - (opens ? 1 : 0) - (closes ? 1 : 0));
                int id = parse_chain_id(id_str, line_no);
                if (opens && closes) {
                    b->chains[id].push_back({t, t});
                } else if (opens) {
                    b->open[id].push_back(t);
                } else if (closes) {
                    auto& stack = b->open[id];
                    if (stack.empty())
                        fail(line_no, "unbalanced coreference bracket: close of chain " +
                                          std::to_string(id) + " with no open");
                    b->chains[id].push_back({stack.back(), t});
                    stack.pop_back();
                } else {
                    fail(line_no, "malformed coreference tag item '" + item + "'");
                }
            }
        }
    }
    if (b) fail(line_no, "missing #end document");
    return docs;
}

void write_conll(const std::vector<Document>& docs, std::ostream& out) {
    for (const auto& doc : docs) {
        std::string doc_id = doc.doc_key;
        std::string part = "0";
        auto us = doc.doc_key.rfind('_');
        if (us != std::string::npos &&
            doc.doc_key.find_first_not_of("0123456789", us + 1) == std::string::npos &&
            us + 1 < doc.doc_key.size()) {
            doc_id = doc.doc_key.substr(0, us);
            part = doc.doc_key.substr(us + 1);
        }
        out << "#begin document (" << doc_id << "); part " << part << "\n";

        // Per-token open/close tag pieces, opens emitted outermost first.
        std::vector<std::vector<std::string>> tags(doc.tokens.size());
        for (int c = 0; c < static_cast<int>(doc.gold_clusters.size()); ++c) {
            std::vector<Span> mentions(doc.gold_clusters[c]);
            std::sort(mentions.begin(), mentions.end(),
                      [](const Span& a, const Span& b) {
                          return a.start != b.start ? a.start < b.start : a.end > b.end;
                      });
            for (const Span& m : mentions) {
                if (m.start == m.end) {
                    tags[m.start].push_back("(" + std::to_string(c) + ")");
                } else {
                    tags[m.start].push_back("(" + std::to_string(c));
                    tags[m.end].push_back(std::to_string(c) + ")");
                }
            }
        }

        for (size_t s = 0; s < doc.sentence_boundaries.size(); ++s) {
            auto [a, e] = doc.sentence_boundaries[s];
            const std::string& speaker =
                s < doc.speakers.size() && !doc.speakers[s].empty() ? doc.speakers[s] : "-";
            for (int t = a; t < e; ++t) {
                std::string tag = "-";
                if (!tags[t].empty()) {
                    tag.clear();
                    for (size_t k = 0; k < tags[t].size(); ++k) {
                        if (k) tag += '|';
                        tag += tags[t][k];
                    }
                }
                out << doc_id << " " << part << " " << (t - a) << " " << doc.tokens[t].text
                    << " - - - - - " << speaker << " - " << tag << "\n";
            }
            out << "\n";
        }
        out << "#end document\n";
    }
}

}  // namespace coref

#include <doctest.h>

#include <random>
#include <sstream>

#include "coref/conll.hpp"
#include "coref/jsonl.hpp"
#include "coref/speakers.hpp"
#include "test_util.hpp"

using namespace coref;
using testutil::make_doc;
using testutil::random_doc;

namespace {

std::string conll_line(const std::string& doc, const std::string& word,
                       const std::string& speaker, const std::string& coref, int idx = 0) {
    return doc + " 0 " + std::to_string(idx) + " " + word + " - - - - - " + speaker + " - " +
           coref;
}

std::vector<Document> parse_str(const std::string& text) {
    std::istringstream in(text);
    return parse_conll(in);
}

}  // namespace

TEST_CASE("parse_conll basic clusters") {
    std::string text = "#begin document (d1); part 0\n" + conll_line("d1", "a", "mary", "(0") +
                       "\n" + conll_line("d1", "b", "mary", "-", 1) + "\n" +
                       conll_line("d1", "c", "mary", "0)", 2) + "\n\n" +
                       conll_line("d1", "x", "mary", "-") + "\n\n#end document\n";
    auto docs = parse_str(text);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].doc_key == "d1_0");
    CHECK(docs[0].num_tokens() == 4);
    CHECK(docs[0].sentence_boundaries == std::vector<std::pair<int, int>>{{0, 3}, {3, 4}});
    REQUIRE(docs[0].gold_clusters.size() == 1);
    CHECK(docs[0].gold_clusters[0] == GoldCluster{{0, 2}});
    CHECK(docs[0].speakers == std::vector<std::string>{"mary", "mary"});
}

TEST_CASE("parse_conll stacked tags") {
    // (0)|(1 on token 0 then 1) on token 1
    std::string text = "#begin document (d2); part 0\n" + conll_line("d2", "a", "s", "(0)|(1") +
                       "\n" + conll_line("d2", "b", "s", "1)", 1) + "\n\n#end document\n";
    auto docs = parse_str(text);
    REQUIRE(docs[0].gold_clusters.size() == 2);
    ClusterSet expected{{{0, 0}}, {{0, 1}}};
    normalize_clusters(expected);
    CHECK(docs[0].gold_clusters == expected);
}

TEST_CASE("parse_conll no mentions") {
    std::string text = "#begin document (d3); part 0\n" + conll_line("d3", "a", "s", "-") +
                       "\n\n#end document\n";
    CHECK(parse_str(text)[0].gold_clusters.empty());
}

TEST_CASE("parse_conll multi-part keys") {
    std::string text = "#begin document (doc); part 0\n" + conll_line("doc", "a", "s", "-") +
                       "\n\n#end document\n#begin document (doc); part 1\n" +
                       conll_line("doc", "b", "s", "-") + "\n\n#end document\n";
    auto docs = parse_str(text);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].doc_key == "doc_0");
    CHECK(docs[1].doc_key == "doc_1");
}

TEST_CASE("parse_conll errors") {
    SUBCASE("unbalanced close") {
        std::string text = "#begin document (d); part 0\n" + conll_line("d", "a", "s", "0)") +
                           "\n\n#end document\n";
        CHECK_THROWS_WITH_AS(parse_str(text), doctest::Contains("line 2"), ParseError);
    }
    SUBCASE("mention crossing sentence boundary") {
        std::string text = "#begin document (d); part 0\n" + conll_line("d", "a", "s", "(0") +
                           "\n\n" + conll_line("d", "b", "s", "0)") + "\n\n#end document\n";
        CHECK_THROWS_WITH_AS(parse_str(text), doctest::Contains("crosses a sentence"),
                             ParseError);
    }
    SUBCASE("malformed column count") {
        std::string text = "#begin document (d); part 0\nd 0 0 word\n\n#end document\n";
        CHECK_THROWS_WITH_AS(parse_str(text), doctest::Contains("columns"), ParseError);
    }
    SUBCASE("missing end") {
        std::string text = "#begin document (d); part 0\n" + conll_line("d", "a", "s", "-") + "\n";
        CHECK_THROWS_AS(parse_str(text), ParseError);
    }
}

TEST_CASE("conll round trip on crafted corpus") {
    std::mt19937_64 rng(7);
    std::vector<Document> docs;
    for (int i = 0; i < 25; ++i) docs.push_back(random_doc(rng, "doc" + std::to_string(i) + "_0"));
    // nested + stacked brackets
    docs.push_back(make_doc("nested_0", {"a b c d e"}, {"s"},
                            {{{0, 4}, {1, 3}}, {{2, 2}, {4, 4}}}));

    std::ostringstream out;
    write_conll(docs, out);
    std::istringstream in(out.str());
    auto reparsed = parse_conll(in);
    REQUIRE(reparsed.size() == docs.size());
    for (size_t i = 0; i < docs.size(); ++i) CHECK(reparsed[i] == docs[i]);

    // serialize -> parse -> serialize is byte identical
    std::ostringstream out2;
    write_conll(reparsed, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("insert_speakers remaps indices") {
    Document doc = make_doc("d_0", {"I like it"}, {"Mary"}, {{{0, 0}, {2, 2}}});
    Document ins = insert_speakers(doc);
    REQUIRE(ins.num_tokens() == 5);
    CHECK(ins.tokens[0].text == "Mary");
    CHECK(ins.tokens[1].text == ":");
    CHECK(ins.tokens[0].synthetic);
    CHECK(ins.tokens[1].synthetic);
    CHECK_FALSE(ins.tokens[2].synthetic);
    CHECK(ins.gold_clusters == ClusterSet{{{2, 2}, {4, 4}}});
    CHECK(ins.sentence_boundaries == std::vector<std::pair<int, int>>{{0, 5}});
}

TEST_CASE("insert_speakers change points only") {
    Document doc = make_doc("d_0", {"a b", "c d", "e f"}, {"mary", "mary", "john"});
    Document ins = insert_speakers(doc);
    int synthetic = 0;
    for (const auto& t : ins.tokens) synthetic += t.synthetic;
    CHECK(synthetic == 2 * 2);  // two change points x (1 name token + separator)
    CHECK(ins.tokens[0].text == "mary");
    CHECK(ins.tokens[6].text == "john");  // a b | c d | john :
}

TEST_CASE("insert_speakers missing speaker becomes unknown") {
    Document doc = make_doc("d_0", {"a b"}, {""});
    Document ins = insert_speakers(doc);
    CHECK(ins.tokens[0].text == kUnknownSpeaker);
    CHECK(ins.tokens[0].synthetic);
}

TEST_CASE("insert_speakers preserves mention text") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
        Document doc = random_doc(rng, "d");
        Document ins = insert_speakers(doc);
        REQUIRE(ins.gold_clusters.size() == doc.gold_clusters.size());
        for (size_t c = 0; c < doc.gold_clusters.size(); ++c) {
            REQUIRE(ins.gold_clusters[c].size() == doc.gold_clusters[c].size());
            for (size_t m = 0; m < doc.gold_clusters[c].size(); ++m) {
                Span a = doc.gold_clusters[c][m];
                Span b = ins.gold_clusters[c][m];
                REQUIRE(a.length() == b.length());
                for (int k = 0; k < a.length(); ++k) {
                    CHECK(doc.tokens[a.start + k].text == ins.tokens[b.start + k].text);
                    CHECK_FALSE(ins.tokens[b.start + k].synthetic);
                }
            }
        }
    }
}

TEST_CASE("insert_speakers is idempotent") {
    Document doc = make_doc("d_0", {"a b"}, {"mary"});
    Document once = insert_speakers(doc);
    CHECK(insert_speakers(once) == once);
}

TEST_CASE("jsonlines basics") {
    std::istringstream in(
        R"({"doc_key":"d1","sentences":[["a","b"]],"speakers":[["s","s"]],"clusters":[]})");
    auto docs = read_jsonlines(in);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].num_tokens() == 2);
    CHECK(docs[0].gold_clusters.empty());
    CHECK(docs[0].speakers == std::vector<std::string>{"s"});
}

TEST_CASE("jsonlines errors name doc_key and field") {
    SUBCASE("missing field") {
        std::istringstream in(R"({"doc_key":"dk","sentences":[["a"]],"clusters":[]})");
        CHECK_THROWS_WITH_AS(read_jsonlines(in), doctest::Contains("dk"), FormatError);
    }
    SUBCASE("ragged speakers") {
        std::istringstream in(
            R"({"doc_key":"dk","sentences":[["a","b"]],"speakers":[["s"]],"clusters":[]})");
        CHECK_THROWS_WITH_AS(read_jsonlines(in), doctest::Contains("ragged"), FormatError);
    }
    SUBCASE("cluster index out of range") {
        std::istringstream in(
            R"({"doc_key":"dk","sentences":[["a","b"]],"speakers":[["s","s"]],"clusters":[[[0,5]]]})");
        CHECK_THROWS_WITH_AS(read_jsonlines(in), doctest::Contains("dk"), FormatError);
    }
}

TEST_CASE("jsonlines round trips") {
    std::mt19937_64 rng(3);
    std::vector<Document> docs;
    for (int i = 0; i < 20; ++i) docs.push_back(random_doc(rng, "doc" + std::to_string(i)));
    docs.push_back(insert_speakers(docs[0]));  // synthetic flags survive

    std::ostringstream out;
    write_jsonlines(docs, out);
    std::istringstream in(out.str());
    auto reread = read_jsonlines(in);
    REQUIRE(reread.size() == docs.size());
    for (size_t i = 0; i < docs.size(); ++i) CHECK(reread[i] == docs[i]);

    std::ostringstream out2;
    write_jsonlines(reread, out2);
    CHECK(out.str() == out2.str());
}

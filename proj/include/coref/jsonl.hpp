#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "coref/types.hpp"

namespace coref {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON-lines interchange: one object per line with doc_key, sentences,
// speakers (parallel to sentences), clusters, and an optional synthetic
// flag array (parallel to sentences, present when any token is synthetic).
std::vector<Document> read_jsonlines(std::istream& in);
void write_jsonlines(const std::vector<Document>& docs, std::ostream& out);

}  // namespace coref

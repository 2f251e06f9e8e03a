#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "coref/types.hpp"

namespace coref {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads CoNLL-2012 *_conll text. One Document per (document id, part) pair,
// keyed "docid_part". Word is column 3, speaker column 9, coreference tags
// the final column.
std::vector<Document> parse_conll(std::istream& in);

// Serializes documents back to the column layout parse_conll accepts.
void write_conll(const std::vector<Document>& docs, std::ostream& out);

}  // namespace coref

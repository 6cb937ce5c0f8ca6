#ifndef QPMAP_DOCUMENT_HPP
#define QPMAP_DOCUMENT_HPP

#include "qpmap/map.hpp"
#include "qpmap/transform.hpp"

#include <string>
#include <string_view>

namespace qpmap {

// Map documents:
//
//   {"n": 2, "m": 1,
//    "lambda": ["1", "-1"],
//    "A": [["2"], ["-2"]],
//    "B": [["1", "1"]]}
//
// Entries are rational strings ("p" or "p/q"). An optional "relaxed": true
// marks a map that skips the zero-row/zero-column validation.
//
// Parse failures throw Error(ParseError) prefixed with the field path, e.g.
// "B[0][1]: zero denominator". Validation failures keep their own codes.

QPMap parse_map_document(std::string_view json_text);
std::string write_map_document(const QPMap& map);

/// {"C": [["1", "0"], ["0", "2"]]}
QMT parse_qmt_document(std::string_view json_text);
std::string write_qmt_document(const QMT& qmt);

/// Reads a whole file; Error(ParseError) naming the path when unreadable.
std::string read_text_file(const std::string& path);

}  // namespace qpmap

#endif  // QPMAP_DOCUMENT_HPP

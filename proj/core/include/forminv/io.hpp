#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "forminv/polymap.hpp"

namespace forminv {

/// Malformed map document. Syntax errors carry a 1-based line and column.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A map F = (F_1, ..., F_n) of exact polynomials with its working degree.
///
/// Text form (JSON, one component per line):
///   {
///     "n": 1,
///     "D": 8,
///     "vars": ["z"],
///     "components": [
///       [{"exp": [1], "c": "1"}, {"exp": [2], "c": "-1"}]
///     ],
///     "meta": {}
///   }
/// Coefficients are exact rationals written as strings "p" or "p/q".
struct MapDocument {
  int degree = 1;
  std::vector<std::string> vars;
  PolyMap map;
  /// Free-form metadata, kept as compact JSON text.
  std::string meta = "{}";

  int nvars() const { return map.nvars(); }
};

/// Parses and validates a document. Rejects constant terms, dimension
/// mismatches and malformed coefficients.
MapDocument parse_map_document(std::string_view text);

/// Canonical text form: graded term order, reduced fractions.
std::string serialize(const MapDocument& doc);

/// Builds a document for m, recording the homogeneous degree of m - z
/// in the metadata when there is one.
MapDocument make_document(const PolyMap& m, int degree);

/// Reads a whole file. Throws ParseError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace forminv

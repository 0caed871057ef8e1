#pragma once

// FHM1 text format for exact sparse matrices.
//
//   FHM1 <rows> <cols> <nnz> <tag>
//   <row> <col> <num>/<den>        (nnz lines, 0-based, sorted by (col, row))
//
// Fractions are written in lowest terms with a positive denominator, so a
// matrix has exactly one serialization.

#include <iosfwd>
#include <string>

#include "fh/sparse_matrix.hpp"

namespace fh {

struct TaggedMatrix {
  SparseExactMatrix matrix;
  std::string tag;
};

void write_fhm1(std::ostream& out, const SparseExactMatrix& m, const std::string& tag);
std::string to_fhm1(const SparseExactMatrix& m, const std::string& tag);

// Throws ParseError (with the offending line number) on malformed input.
TaggedMatrix read_fhm1(std::istream& in);
TaggedMatrix parse_fhm1(const std::string& text);

}  // namespace fh

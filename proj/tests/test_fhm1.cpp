#include <doctest.h>

#include <sstream>

#include "fh/errors.hpp"
#include "fh/fhm1.hpp"
#include "fh/foulkes_map.hpp"

using namespace fh;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_fhm1(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("identity export") {
  CHECK(to_fhm1(SparseExactMatrix::identity(1), "psi") == "FHM1 1 1 1 psi\n0 0 1/1\n");
}

TEST_CASE("entries are sorted by column then row") {
  const auto m = SparseExactMatrix::from_triplets(3, 2, {{2, 0, Rational(-1, 2)}, {0, 1, 4}, {0, 0, 1}});
  CHECK(to_fhm1(m, "t") == "FHM1 3 2 3 t\n0 0 1/1\n2 0 -1/2\n0 1 4/1\n");
}

TEST_CASE("round trip is lossless and byte identical") {
  const PsiMatrix psi = psi_composed(2, 3);
  const std::string text = to_fhm1(psi.matrix, "psi");
  const TaggedMatrix back = parse_fhm1(text);
  CHECK(back.tag == "psi");
  CHECK(back.matrix == psi.matrix);
  CHECK(to_fhm1(back.matrix, back.tag) == text);
  std::istringstream in(text);
  CHECK(read_fhm1(in).matrix == psi.matrix);
  const auto empty = SparseExactMatrix::from_triplets(2, 3, {});
  CHECK(parse_fhm1(to_fhm1(empty, "zero")).matrix == empty);
}

TEST_CASE("writer rejects bad tags") {
  CHECK_THROWS_AS(to_fhm1(SparseExactMatrix::identity(1), ""), ArgumentError);
  CHECK_THROWS_AS(to_fhm1(SparseExactMatrix::identity(1), "two words"), ArgumentError);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("") == 1);
  CHECK(error_line("FHM2 1 1 1 t\n0 0 1/1\n") == 1);
  CHECK(error_line("FHM1 1 1 t\n") == 1);
  CHECK(error_line("FHM1 1 1 1 t\n") == 2);             // fewer entries than nnz
  CHECK(error_line("FHM1 1 1 1 t\n0 0 1/1\n0 0 1/1\n") == 3);  // more entries than nnz
  CHECK(error_line("FHM1 1 1 1 t\n1 0 1/1\n") == 2);    // row out of range
  CHECK(error_line("FHM1 1 1 1 t\n0 0 1\n") == 2);      // missing denominator
  CHECK(error_line("FHM1 1 1 1 t\n0 0 1/0\n") == 2);
  CHECK(error_line("FHM1 1 1 1 t\n0 0 0/1\n") == 2);
  CHECK(error_line("FHM1 1 1 1 t\n0 0 1/-2\n") == 2);
  CHECK(error_line("FHM1 2 1 2 t\n1 0 1/1\n0 0 1/1\n") == 3);  // unsorted
  CHECK(error_line("FHM1 2 1 2 t\n0 0 1/1\n0 0 2/1\n") == 3);  // duplicate
  CHECK(error_line("FHM1 2 2 1 t\n0 x 1/1\n") == 2);
}

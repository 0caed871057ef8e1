#include <doctest.h>

#include "fh/errors.hpp"
#include "fh/plethysm.hpp"

using namespace fh;

namespace {

Partition P(const char* text) { return Partition::parse(text); }

}  // namespace

TEST_CASE("permutation character") {
  // Identity fixes every block partition.
  CHECK(perm_character_value(2, 3, P("1,1,1,1,1,1")) == block_partition_count(2, 3));
  // A 4-cycle on {0,1,2,3} fixes only {0,2}{1,3}.
  CHECK(perm_character_value(2, 2, P("4")) == 1);
  // (01)(23) fixes all three pairings.
  CHECK(perm_character_value(2, 2, P("2,2")) == 3);
  CHECK(perm_character_value(2, 2, P("2,1,1")) == 1);
  CHECK_THROWS_AS(perm_character_value(2, 2, P("3,2")), ArgumentError);
}

TEST_CASE("known plethysms") {
  // h2[h2] = s4 + s22
  MultiplicityVector m = multiplicities(2, 2);
  CHECK(m.at(P("4")) == 1);
  CHECK(m.at(P("2,2")) == 1);
  CHECK(m.at(P("3,1")) == 0);
  // h2[h3] = s6 + s42 and h3[h2] = s6 + s42 + s222
  m = multiplicities(2, 3);
  CHECK(m.at(P("6")) == 1);
  CHECK(m.at(P("4,2")) == 1);
  CHECK(m.at(P("2,2,2")) == 0);
  m = multiplicities(3, 2);
  CHECK(m.at(P("6")) == 1);
  CHECK(m.at(P("4,2")) == 1);
  CHECK(m.at(P("2,2,2")) == 1);
  CHECK(multiplicity(P("2,2,2"), 3, 2) == 1);
  CHECK_THROWS_AS(multiplicity(P("2,2"), 3, 2), ArgumentError);
  CHECK_THROWS_AS(multiplicities(3, 5), ResourceError);
}

TEST_CASE("multiplicities sum to the block partition count") {
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; a * b <= 10; ++b) {
      const MultiplicityVector m = multiplicities(a, b);
      BigInt total = 0;
      for (const auto& [lambda, k] : m.mults) {
        total += k * dim_irrep_sym(lambda);
        if (sgn(k) != 0) CHECK(lambda.length() <= a);
      }
      CHECK(total == block_partition_count(a, b));
    }
}

TEST_CASE("monomial oracle agrees with characters") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
    const int n = a * b;
    const MultiplicityVector viaMonomials = plethysm_via_monomials(a, b, n);
    const MultiplicityVector viaCharacters = multiplicities(a, b);
    for (const Partition& lambda : partitions_of(n)) CHECK(viaMonomials.at(lambda) == viaCharacters.at(lambda));
  }
  // Fewer variables only drops partitions with too many parts.
  const MultiplicityVector few = plethysm_via_monomials(3, 2, 2);
  CHECK(few.at(P("4,2")) == 1);
  CHECK(few.mults.count(P("2,2,2")) == 0);
}

TEST_CASE("Foulkes and Hermite comparisons") {
  const ComparisonReport equal = foulkes_check(2, 2);
  CHECK(equal.holds);
  for (const ComparisonRow& row : equal.rows) CHECK(row.left == row.right);
  const ComparisonReport report = foulkes_check(2, 3);
  CHECK(report.holds);
  CHECK(report.rows.size() == 11);
  CHECK_THROWS_AS(foulkes_check(3, 2), ArgumentError);
  const ComparisonReport two_rows = hermite_check(2, 4);
  CHECK(two_rows.holds);
  CHECK(two_rows.rows.size() == 5);

  // Swapped inputs make the inequality fail at (2,2,2).
  const ComparisonReport swapped = foulkes_report(2, 3, multiplicities(3, 2), multiplicities(2, 3));
  CHECK_FALSE(swapped.holds);
  CHECK(swapped.violations == std::vector<Partition>{P("2,2,2")});
}

#include <doctest.h>

#include <set>

#include "fh/combinatorics.hpp"
#include "fh/errors.hpp"
#include "oracles.hpp"

using namespace fh;

namespace {

oracle::Shape shape_of(const Partition& p) { return {p.parts().begin(), p.parts().end()}; }

}  // namespace

TEST_CASE("partition parsing and basic operations") {
  const Partition p = Partition::parse("3,2,2");
  CHECK(p.size() == 7);
  CHECK(p.length() == 3);
  CHECK(p[1] == 2);
  CHECK(p[5] == 0);
  CHECK(p.multiplicity(2) == 2);
  CHECK(p.to_string() == "(3,2,2)");
  CHECK(Partition::parse("(3, 2, 2)") == p);
  CHECK(p.conjugate() == Partition::parse("3,3,1"));
  CHECK(Partition::from_unsorted({0, 1, 3, 0, 2}) == Partition::parse("3,2,1"));
  CHECK_THROWS_AS(Partition::parse("2,3"), ArgumentError);
  CHECK_THROWS_AS(Partition::parse("2,x"), ArgumentError);
}

TEST_CASE("partitions_of counts and order") {
  for (int n = 0; n <= 12; ++n) {
    const auto all = partitions_of(n);
    CHECK(static_cast<long>(all.size()) == oracle::partition_count(n, n));
    CHECK(std::is_sorted(all.begin(), all.end(), std::greater<>()));
    for (const Partition& p : all) CHECK(p.conjugate().conjugate() == p);
  }
  CHECK(partitions_of(12).size() == 77);
  CHECK(partitions_of(8, 2).size() == 5);
  CHECK(partitions_of(4).front() == Partition::parse("4"));
  CHECK(partitions_of(4).back() == Partition::parse("1,1,1,1"));
}

TEST_CASE("dominance is compatible with reverse lexicographic order") {
  const auto all = partitions_of(8);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[j].dominates(all[i]));
  CHECK(Partition::parse("4,2").dominates(Partition::parse("3,3")));
  CHECK_FALSE(Partition::parse("4,1,1").dominates(Partition::parse("3,3")));
  CHECK_FALSE(Partition::parse("3,3").dominates(Partition::parse("4,1,1")));
}

TEST_CASE("class sizes sum to n!") {
  for (int n = 1; n <= 10; ++n) {
    BigInt total = 0;
    for (const Partition& mu : partitions_of(n)) total += class_size(mu);
    CHECK(total == factorial(n));
  }
  CHECK(centralizer_order(Partition::parse("2,2,1")) == 8);
}

TEST_CASE("character table: degrees and orthogonality") {
  for (int n = 1; n <= 8; ++n) {
    const CharacterTable t = character_table(n);
    const Partition identity(std::vector<int>(static_cast<std::size_t>(n), 1));
    for (std::size_t l = 0; l < t.partitions.size(); ++l) {
      CHECK(t.at(t.partitions[l], identity) == oracle::syt_count(shape_of(t.partitions[l])));
      CHECK(dim_irrep_sym(t.partitions[l]) == oracle::syt_count(shape_of(t.partitions[l])));
      for (std::size_t m = 0; m < t.partitions.size(); ++m) {
        BigInt inner = 0;
        for (std::size_t c = 0; c < t.partitions.size(); ++c)
          inner += class_size(t.partitions[c]) * t.values[l][c] * t.values[m][c];
        CHECK(inner == (l == m ? factorial(n) : BigInt(0)));
      }
    }
  }
}

TEST_CASE("known character values") {
  CHECK(character(Partition::parse("2,1"), Partition::parse("3")) == -1);
  CHECK(character(Partition::parse("2,2"), Partition::parse("2,2")) == 2);
  CHECK(character(Partition::parse("3,1"), Partition::parse("2,1,1")) == 1);
  CHECK(character(Partition::parse("1,1,1,1"), Partition::parse("4")) == -1);
  CHECK(character(Partition::parse("3,2"), Partition::parse("5")) == 0);
}

TEST_CASE("Kostka numbers against tableau enumeration") {
  for (int n = 1; n <= 7; ++n)
    for (const Partition& lambda : partitions_of(n))
      for (const Partition& mu : partitions_of(n)) {
        const WeakComposition content(mu.parts().begin(), mu.parts().end());
        CHECK(kostka(lambda, content) == oracle::ssyt_count(shape_of(lambda), content));
      }
  // Not sorted: Kostka numbers are symmetric in the content.
  CHECK(kostka(Partition::parse("3,1"), {1, 0, 3}) == kostka(Partition::parse("3,1"), {3, 1}));
  CHECK(kostka(Partition::parse("2,2"), {1, 1, 1, 1}) == 2);
}

TEST_CASE("GL_n dimensions against tableau enumeration") {
  for (int n = 1; n <= 4; ++n)
    for (int size = 1; size <= 6; ++size)
      for (const Partition& lambda : partitions_of(size))
        CHECK(dim_irrep_gl(lambda, n) == oracle::gl_dimension(shape_of(lambda), n));
  CHECK(dim_irrep_gl(Partition::parse("2,2,1"), 2) == 0);
}

TEST_CASE("block set partitions") {
  CHECK(block_partition_count(2, 2) == 3);
  CHECK(block_partition_count(3, 4) == 5775);
  CHECK(block_partition_count(4, 3) == 15400);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; a * b <= 12; ++b) {
      const auto all = enumerate_block_partitions(a, b);
      CHECK(BigInt(static_cast<unsigned long>(all.size())) == block_partition_count(a, b));
      CHECK(std::is_sorted(all.begin(), all.end()));
      CHECK(std::set<BlockSetPartition>(all.begin(), all.end()).size() == all.size());
      const auto reference = oracle::canonical_labellings(a, b);
      REQUIRE(reference.size() == all.size());
      for (std::size_t k = 0; k < all.size(); ++k)
        CHECK(std::vector<int>(all[k].labels().begin(), all[k].labels().end()) == reference[k]);
    }
  CHECK_THROWS_AS(enumerate_block_partitions(3, 6, 16), ResourceError);

  const std::vector<int> labels{2, 0, 2, 0, 1, 1};
  const BlockSetPartition p = BlockSetPartition::from_labels(labels);
  CHECK(p.block_count() == 3);
  CHECK(p.block_size() == 2);
  CHECK(p.to_string() == "{0,2}{1,3}{4,5}");
  CHECK(BlockSetPartition({{4, 5}, {3, 1}, {0, 2}}) == p);
}

#include <doctest.h>

#include "fh/errors.hpp"
#include "fh/exactla.hpp"
#include "fh/foulkes_map.hpp"
#include "fh/plethysm.hpp"
#include "oracles.hpp"

using namespace fh;

TEST_CASE("operator chains") {
  const auto psi = psi_chain(2, 2);
  CHECK(psi == std::vector<RaisingOp>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  CHECK(right_factor_chain(3, 4) == std::vector<RaisingOp>{{1, 4}, {2, 4}, {3, 4}});
  CHECK(left_factor_chain(2, 3) == std::vector<RaisingOp>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  std::vector<RaisingOp> applied(psi.rbegin(), psi.rend());
  const auto path = content_trajectory(Content{{2, 2}, {0, 0}}, applied);
  REQUIRE(path.size() == 5);
  CHECK(path[1] == Content{{2, 1}, {0, 1}});
  CHECK(path.back() == Content{{0, 0}, {2, 2}});
}

TEST_CASE("right factor chain walks from a x b to a x B") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {2, 6}}) {
    const auto chain = right_factor_chain(a, b);
    const std::vector<RaisingOp> applied(chain.rbegin(), chain.rend());
    const Content start{WeakComposition(static_cast<std::size_t>(a), b), WeakComposition(static_cast<std::size_t>(b), 0)};
    const auto path = content_trajectory(start, applied);
    REQUIRE(path.size() == static_cast<std::size_t>(a + 1));
    WeakComposition end_beta(static_cast<std::size_t>(b), 0);
    end_beta.back() = a;
    CHECK(path.back() == Content{WeakComposition(static_cast<std::size_t>(a), b - 1), end_beta});
  }
}

TEST_CASE("composed psi matches the word-level definition") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
    CAPTURE(a);
    CAPTURE(b);
    const PsiMatrix psi = psi_composed(a, b);
    CHECK(psi.matrix.to_dense() == oracle::psi(a, b));
  }
}

TEST_CASE("forward and adjoint composition agree") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 5}}) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(psi_composed(a, b, kDefaultPsiLimit, ChainDirection::Forward).matrix ==
          psi_composed(a, b, kDefaultPsiLimit, ChainDirection::Adjoint).matrix);
  }
}

TEST_CASE("closed form equals composition") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 4}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}, {4, 2}, {2, 5}}) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(psi_fused(a, b).matrix == psi_composed(a, b).matrix);
  }
}

TEST_CASE("small ranks") {
  CHECK(rank_exact(psi_composed(2, 2).matrix) == 3);
  CHECK(rank_exact(psi_composed(2, 3).matrix) == 10);
  CHECK(rank_exact(psi_fused(2, 4).matrix) == 35);
  CHECK(rank_exact(psi_fused(3, 2).matrix) == 10);
  CHECK(rank_mod_p(psi_fused(3, 3).matrix, default_primes(1)[0]) == 280);
  CHECK(oracle::rank(psi_fused(2, 3).matrix.to_dense()) == 10);
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(psi_composed(3, 5), ResourceError);
  CHECK_THROWS_AS(psi_fused(4, 4, 12), ResourceError);
  CHECK_THROWS_AS(right_factor(3, 3), ArgumentError);
}

TEST_CASE("factorization through the intermediate space") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {2, 3}, {2, 4}}) {
    CAPTURE(a);
    CAPTURE(b);
    const FactorMap right = right_factor(a, b);
    const FactorMap left = left_factor(a, b);
    CHECK(right.codomain.size() == left.domain.size());
    CHECK(BigInt(static_cast<unsigned long>(right.codomain.size())) == binomial(a * b, a) * block_partition_count(a, b - 1));
    const PsiMatrix psi = psi_composed(a, b);
    CHECK(left.matrix.multiply(right.matrix) == refine_codomain(psi, left.codomain));
    const DirectSumReport report = left_factor_direct_sum(left, a, b);
    CHECK(report.disjoint);
    CHECK(BigInt(static_cast<unsigned long>(report.blocks)) == binomial(a * b, a));
  }
}

TEST_CASE("invariance of images") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}}) {
    const InvarianceReport right = right_factor_invariance(a, b);
    CHECK(right.all_fixed);
    CHECK(right.columns == block_partition_count(a, b).get_ui());
    CHECK(psi_image_invariance(a, b).all_fixed);
  }
}

TEST_CASE("orbit coordinates reject non-invariant combinations") {
  const OrbitSumBasis basis = orbit_sum_basis(2, 2);
  const Alphabet alphabet(2, 2);
  WordCombination one{4, {{Word::parse(alphabet, "E1E1E2E2").key(), 1}}};
  CHECK_THROWS_AS(orbit_coordinates(one, basis), ConsistencyError);
  WordCombination both{4, {{Word::parse(alphabet, "E1E1E2E2").key(), 3}, {Word::parse(alphabet, "E2E2E1E1").key(), 3}}};
  both.normalise();
  const auto coords = orbit_coordinates(both, basis);
  REQUIRE(coords.size() == 1);
  CHECK(coords[0].second == 3);
  CHECK_FALSE(is_fixed_by_generators(one, LetterRange{0, 2}));
  CHECK(is_fixed_by_generators(both, LetterRange{0, 2}));
}

TEST_CASE("monomial multiset bases") {
  CHECK(monomials(2, 2) == std::vector<std::uint64_t>{0x00, 0x01, 0x11});
  const MonomialMultisetBasis basis = monomial_multiset_basis(2, 2, 2);
  CHECK(basis.size() == 6);
  for (Index i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis.element(i)) == i);
  CHECK(monomial_multiset_basis(3, 3, 3).size() == 220);
}

TEST_CASE("polynomial map") {
  // a = 1: every ordering of a monomial gives the same multiset of variables.
  const SparseExactMatrix single = psi_poly(1, 3, 2);
  CHECK(single.rows() == 4);
  CHECK(single.cols() == 4);
  CHECK(single.nnz() == 4);
  CHECK(single.at(0, 0) == 1);
  CHECK(single.at(1, 1) == 3);
  for (const auto& [a, b, n] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 2, 2}}) {
    const SparseExactMatrix poly = psi_poly(a, b, n);
    CHECK(poly.rows() == monomial_multiset_basis(b, a, n).size());
    CHECK(poly.cols() == monomial_multiset_basis(a, b, n).size());
    CHECK(oracle::rank(poly.to_dense()) == rank_exact(poly));
  }
  CHECK(rank_exact(psi_poly(2, 2, 3)) == 21);
}

TEST_CASE("kernel consistency") {
  const KernelConsistencyReport square = kernel_consistency(2, 2, 4);
  CHECK(square.consistent);
  CHECK(square.psi_kernel() == 0);
  CHECK(square.poly_kernel() == 0);
  CHECK(square.psi_kernel_lower_bound == 0);

  const KernelConsistencyReport wide = kernel_consistency(3, 2, 3);
  CHECK(wide.consistent);
  CHECK(wide.psi_cols == 15);
  CHECK(wide.psi_kernel() == 5);
  CHECK(wide.psi_kernel_lower_bound == 5);
  CHECK(BigInt(static_cast<unsigned long>(wide.poly_kernel())) == wide.poly_kernel_lower_bound);
}

TEST_CASE("factor bases match invariant filtering") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {2, 4}, {3, 4}}) {
    CAPTURE(a);
    CAPTURE(b);
    const Alphabet alphabet(a, b);
    for (const OrbitSumBasis& built : {intermediate_basis(a, b), left_codomain_basis(a, b)}) {
      const OrbitSumBasis filtered = invariant_basis(alphabet, a * b, built.content(), built.range());
      CHECK(std::vector<WordKey>(built.representatives().begin(), built.representatives().end()) ==
            std::vector<WordKey>(filtered.representatives().begin(), filtered.representatives().end()));
    }
  }
}

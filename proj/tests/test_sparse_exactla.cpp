#include <doctest.h>

#include <random>

#include "fh/errors.hpp"
#include "fh/exactla.hpp"
#include "fh/sparse_matrix.hpp"
#include "oracles.hpp"

using namespace fh;

namespace {

// Sparse random matrix with small rational entries; rank deficiency comes
// from duplicated and combined columns.
oracle::Dense random_dense(std::mt19937& rng, int rows, int cols, double fill) {
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  oracle::Dense m(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols)));
  for (auto& row : m)
    for (auto& x : row)
      if (coin(rng) < fill) {
        x = Rational(num(rng), den(rng));
        x.canonicalize();
      }
  if (cols >= 3 && coin(rng) < 0.5)
    for (auto& row : m) row[2] = row[0] * 3 - row[1];
  return m;
}

}  // namespace

TEST_CASE("sparse matrix construction and access") {
  const auto m = SparseExactMatrix::from_triplets(3, 2, {{2, 0, Rational(1, 2)}, {0, 0, 3}, {1, 1, -1}});
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m.nnz() == 3);
  CHECK(m.at(0, 0) == 3);
  CHECK(m.at(2, 0) == Rational(1, 2));
  CHECK(m.at(2, 1) == 0);
  const auto col = m.column(0);
  REQUIRE(col.size() == 2);
  CHECK(col[0].first == 0);
  CHECK(col[1].first == 2);
  CHECK(SparseExactMatrix::from_dense(m.to_dense()) == m);
  CHECK(m.transpose().transpose() == m);
  CHECK(m.transpose().at(0, 2) == Rational(1, 2));
  CHECK(SparseExactMatrix::identity(4).nnz() == 4);
  CHECK(m.scaled(2).at(2, 0) == 1);
  CHECK(m.select_rows(std::vector<Index>{2, 1}).at(0, 0) == Rational(1, 2));
  const std::vector<Rational> v{1, 2};
  const auto image = m.apply(v);
  CHECK(image == std::vector<Rational>{3, -2, Rational(1, 2)});
}

TEST_CASE("uniform value") {
  CHECK(SparseExactMatrix::identity(3).uniform_value() == Rational(1));
  const auto m = SparseExactMatrix::from_triplets(2, 2, {{0, 0, 1}, {1, 1, 2}});
  CHECK_FALSE(m.uniform_value().has_value());
}

TEST_CASE("sparse product against dense product") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_dense(rng, 1 + trial % 7, 1 + trial % 5, 0.4);
    const auto y = random_dense(rng, 1 + trial % 5, 1 + trial % 6, 0.4);
    const auto product = SparseExactMatrix::from_dense(x).multiply(SparseExactMatrix::from_dense(y));
    CHECK(product.to_dense() == oracle::multiply(x, y));
  }
  // Uniform integer entries take the 64-bit path.
  const auto ones = SparseExactMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  CHECK(ones.multiply(ones).at(0, 1) == 2);
}

TEST_CASE("primes") {
  const auto primes = default_primes(3);
  REQUIRE(primes.size() == 3);
  for (Prime p : primes) {
    CHECK(is_prime(p));
    CHECK(p < (1u << 30));
  }
  CHECK(primes[0] > primes[1]);
  CHECK(random_primes(4, 1) == random_primes(4, 1));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("modular and exact rank against rational elimination") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 9, cols = 1 + (trial * 7) % 8;
    const auto dense = random_dense(rng, rows, cols, 0.2 + 0.1 * (trial % 6));
    const auto m = SparseExactMatrix::from_dense(dense);
    const std::size_t expected = oracle::rank(dense);
    CHECK(rank_exact(m) == expected);
    CHECK(rank_mod_p(m, default_primes(1)[0]) == expected);
    ModularOptions dense_first;
    dense_first.dense_switch_fill_ratio = 1.0;
    CHECK(rank_mod_p(m, default_primes(2)[1], dense_first) == expected);
  }
}

TEST_CASE("rank of a larger structured matrix") {
  // Banded matrix plus a dependent column: exercises the sparse pivoting and
  // the switch to dense elimination.
  std::vector<Triplet> t;
  const Index n = 300;
  for (Index c = 0; c < n; ++c) {
    t.push_back({c, c, 2});
    if (c + 1 < n) t.push_back({c + 1, c, Rational(-1, 3)});
    if (c + 7 < n) t.push_back({c + 7, c, 1});
  }
  for (Index r = 0; r < n; ++r) {
    Rational v = 0;
    for (const Triplet& x : t)
      if (x.row == r && (x.col == 0 || x.col == 5)) v += x.value;
    if (sgn(v) != 0) t.push_back({r, n, v});
  }
  const auto m = SparseExactMatrix::from_triplets(n, n + 1, t);
  CHECK(rank_mod_p(m, default_primes(1)[0]) == n);
  CHECK(rank_exact(m) == n);
  const auto kernel = kernel_basis_exact(m);
  REQUIRE(kernel.size() == 1);
  CHECK(kernel[0][n] == 1);
  CHECK(kernel[0][0] == -1);
  CHECK(kernel[0][5] == -1);
}

TEST_CASE("kernel basis") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto dense = random_dense(rng, 2 + trial % 5, 3 + trial % 4, 0.5);
    const auto m = SparseExactMatrix::from_dense(dense);
    const auto kernel = kernel_basis_exact(m);
    CHECK(kernel.size() + oracle::rank(dense) == m.cols());
    for (const auto& v : kernel) {
      for (const Rational& x : m.apply(v)) CHECK(sgn(x) == 0);
    }
  }
}

TEST_CASE("bad primes and resource limits") {
  const Prime p = default_primes(1)[0];
  const auto m = SparseExactMatrix::from_triplets(1, 1, {{0, 0, Rational(1, p)}});
  CHECK_THROWS_AS(rank_mod_p(m, p), BadPrimeError);
  CertifyOptions options;
  options.primes = {p, default_primes(2)[1]};
  const RankCertificate cert = certify_injective(m, options);
  CHECK(cert.injective);
  CHECK(cert.primes == std::vector<Prime>{default_primes(2)[1]});

  ExactOptions tiny;
  tiny.max_cells = 4;
  CHECK_THROWS_AS(rank_exact(SparseExactMatrix::identity(3), tiny), ResourceError);
}

TEST_CASE("certificates") {
  const auto full = SparseExactMatrix::identity(5);
  RankCertificate c = certify_injective(full);
  CHECK(c.injective);
  CHECK(c.method == RankMethod::Modular);
  CHECK(c.rank == 5);
  CHECK_FALSE(c.inconclusive);

  // Rank deficient: modular ranks never reach full rank, the exact check decides.
  const auto deficient = SparseExactMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 4}});
  c = certify_injective(deficient);
  CHECK_FALSE(c.injective);
  CHECK(c.method == RankMethod::Exact);
  CHECK(c.rank == 1);

  CertifyOptions limited;
  limited.exact.max_cells = 1;
  c = certify_injective(deficient, limited);
  CHECK(c.inconclusive);
  CHECK_FALSE(c.injective);
  CHECK(c.rank == 1);
  CHECK(to_string(RankMethod::Exact) == "exact");
}

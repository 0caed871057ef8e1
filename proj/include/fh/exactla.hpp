#pragma once

// Rank, kernels and injectivity certificates for SparseExactMatrix.
//
// A matrix has full column rank over Q whenever it has full column rank
// modulo some prime, so the modular route certifies injectivity on its own.
// The converse direction needs exact arithmetic.

#include <cstdint>
#include <string>
#include <vector>

#include "fh/sparse_matrix.hpp"

namespace fh {

using Prime = std::uint32_t;

bool is_prime(std::uint64_t n);
// The k largest primes below 2^30, descending.
std::vector<Prime> default_primes(std::size_t k);
// k distinct primes in [2^29, 2^30) drawn from a seeded generator.
std::vector<Prime> random_primes(std::size_t k, std::uint64_t seed);

struct ModularOptions {
  // Switch from sparse to dense elimination once the cheapest Markowitz
  // pivot would create more than this many fill-ins per active column.
  double dense_switch_fill_ratio = 1.0 / 16.0;
  // Dense rows processed together against each stored pivot row.
  std::size_t batch_rows = 32;
  // Row processing order is shuffled with this seed; 0 keeps the input order.
  std::uint64_t shuffle_seed = 0x5eed;
};

// Rank of m reduced modulo p (p prime, p < 2^30). Throws BadPrimeError when p
// divides a denominator.
std::size_t rank_mod_p(const SparseExactMatrix& m, Prime p, const ModularOptions& options = {});

struct ExactOptions {
  // Dense fraction-free elimination is refused above this many cells.
  std::size_t max_cells = 400'000;
  // Abort once an intermediate entry grows past this many bits.
  std::size_t max_bits = 4096;
};

std::size_t rank_exact(const SparseExactMatrix& m, const ExactOptions& options = {});
// Basis of {v : m v = 0}, one vector per free column; each vector has a 1 in
// its free column and 0 in the other free columns.
std::vector<std::vector<Rational>> kernel_basis_exact(const SparseExactMatrix& m, const ExactOptions& options = {});

enum class RankMethod { Modular, Exact };
std::string to_string(RankMethod method);

struct RankCertificate {
  std::size_t rank = 0;
  std::size_t cols = 0;
  RankMethod method = RankMethod::Modular;
  std::vector<Prime> primes;  // primes actually used
  bool injective = false;
  // No modular prime gave full column rank and the exact check was out of
  // reach; rank is then only a lower bound.
  bool inconclusive = false;
};

struct CertifyOptions {
  std::vector<Prime> primes = default_primes(3);
  ExactOptions exact;
  ModularOptions modular;
};

RankCertificate certify_injective(const SparseExactMatrix& m, const CertifyOptions& options = {});

}  // namespace fh

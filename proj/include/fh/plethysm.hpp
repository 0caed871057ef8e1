#pragma once

// Character-theoretic multiplicities of irreducibles in Sym^a(Sym^b), an
// independent monomial-expansion oracle for the same numbers, and the
// reports built on them: Foulkes inequalities, Hermite reciprocity and the
// kernel dimension cross-check against the linear maps.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fh/combinatorics.hpp"
#include "fh/exactla.hpp"

namespace fh {

inline constexpr int kOracleLimit = 12;

struct MultiplicityVector {
  int n = 0;  // size of every key
  std::map<Partition, BigInt> mults;

  // 0 for partitions that are not stored.
  BigInt at(const Partition& lambda) const;
};

// Block partitions of {0..ab-1} fixed by the permutation whose cycles, of
// lengths mu_1, mu_2, ..., occupy consecutive positions.
BigInt perm_character_value(int a, int b, const Partition& mu, int limit = kOracleLimit);
BigInt perm_character_value(std::span<const BlockSetPartition> partitions, const Partition& mu);

// (1/(ab)!) sum_mu |class(mu)| chi^lambda(mu) perm(mu). Throws
// ConsistencyError if the sum is not a nonnegative integer.
BigInt multiplicity(const Partition& lambda, int a, int b, int limit = kOracleLimit);
MultiplicityVector multiplicities(int a, int b, int limit = kOracleLimit);
// Same, with a precomputed character table of S_ab and block partitions.
MultiplicityVector multiplicities(int a, int b, const CharacterTable& table,
                                  std::span<const BlockSetPartition> partitions);

// Weight multiplicities of Sym^a(Sym^b C^n) at dominant weights, then Schur
// coefficients by a unitriangular solve against Kostka numbers. Returns all
// partitions of ab with at most n parts.
MultiplicityVector plethysm_via_monomials(int a, int b, int n, std::size_t limit = 5'000'000);

struct ComparisonRow {
  Partition lambda;
  BigInt left;   // multiplicity in Sym^a(Sym^b)
  BigInt right;  // multiplicity in Sym^b(Sym^a)
  bool ok = true;
};

struct ComparisonReport {
  int a = 0;
  int b = 0;
  std::vector<ComparisonRow> rows;
  bool holds = true;
  std::vector<Partition> violations;
};

// Every partition of ab: left <= right. Requires a <= b.
ComparisonReport foulkes_check(int a, int b, int limit = kOracleLimit);
// Partitions of ab with at most two parts: left == right.
ComparisonReport hermite_check(int a, int b, int limit = kOracleLimit);
// The same reports from precomputed multiplicities of Sym^a(Sym^b) (left) and
// Sym^b(Sym^a) (right).
ComparisonReport foulkes_report(int a, int b, const MultiplicityVector& left, const MultiplicityVector& right);
ComparisonReport hermite_report(int a, int b, const MultiplicityVector& left, const MultiplicityVector& right);

struct KernelConsistencyReport {
  int a = 0;
  int b = 0;
  // Symmetric group side.
  std::size_t psi_cols = 0;
  std::size_t psi_rows = 0;
  std::size_t psi_rank = 0;
  RankMethod psi_method = RankMethod::Modular;
  bool psi_rank_exact = true;  // false when only a modular lower bound is known
  BigInt psi_kernel_lower_bound;  // sum_lambda max(0, left - right) f^lambda
  // Polynomial side at n variables, when requested.
  std::optional<int> n;
  std::size_t poly_cols = 0;
  std::size_t poly_rank = 0;
  bool poly_rank_exact = true;
  BigInt poly_kernel_lower_bound;  // sum_lambda max(0, left - right) dim {lambda}_n

  std::size_t psi_kernel() const { return psi_cols - psi_rank; }
  std::size_t poly_kernel() const { return poly_cols - poly_rank; }
  bool consistent = false;
};

KernelConsistencyReport kernel_consistency(int a, int b, std::optional<int> n = std::nullopt,
                                           const CertifyOptions& options = {});

}  // namespace fh

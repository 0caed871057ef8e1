#pragma once

// The map psi_{a x b} between orbit-sum bases: assembled by running the
// chain of raising operators over every domain vector, and by a closed
// form. Also the two factors of psi for a < b, the position-set (Q) block
// structure of the left factor, and the polynomial map
// Sym^a(Sym^b C^n) -> Sym^b(Sym^a C^n).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fh/sparse_matrix.hpp"
#include "fh/tensorspace.hpp"

namespace fh {

inline constexpr int kDefaultPsiLimit = 12;

struct RaisingOp {
  int i = 1;
  int j = 1;
  bool operator==(const RaisingOp&) const = default;
};

// Operator chains in written (composition) order; the rightmost operator
// is applied first.
// phi_{1,1} o phi_{1,2} o ... o phi_{a,b}
std::vector<RaisingOp> psi_chain(int a, int b);
// phi_{1,b} o ... o phi_{a,b}
std::vector<RaisingOp> right_factor_chain(int a, int b);
// phi_{1,1} o ... o phi_{1,B} o phi_{2,1} o ... o phi_{a,B}, B = b-1
std::vector<RaisingOp> left_factor_chain(int a, int b);

// Contents visited when the operators are applied in the given order,
// starting content first.
std::vector<Content> content_trajectory(const Content& start, std::span<const RaisingOp> applied_in_order);

// Integer combination of words together with a common rational scale.
struct ScaledCombination {
  WordCombination words;
  Rational scale{1};
};

// Applies a chain right to left; every operator contributes 1/length to the
// scale. The result is normalised.
ScaledCombination apply_chain(Alphabet alphabet, std::span<const RaisingOp> chain, WordCombination start);

// True when a normalised combination is fixed by every adjacent
// transposition of the letter range.
bool is_fixed_by_generators(const WordCombination& c, LetterRange range);

// Coordinates of an invariant combination in an orbit-sum basis. Throws
// ConsistencyError when some orbit is incomplete or carries unequal
// multiplicities, or when a word lies outside the basis.
std::vector<std::pair<Index, std::int64_t>> orbit_coordinates(const WordCombination& c, const OrbitSumBasis& basis);

// Matrix of a chain between orbit-sum bases, one domain orbit sum per column.
SparseExactMatrix chain_matrix(const OrbitSumBasis& domain, std::span<const RaisingOp> chain,
                               const OrbitSumBasis& codomain);

struct PsiMatrix {
  int a = 0;
  int b = 0;
  OrbitSumBasis domain;    // S_a orbit sums, one per block partition
  OrbitSumBasis codomain;  // S_b orbit sums
  SparseExactMatrix matrix;
};

// Forward runs the chain on every domain orbit sum and requires the image to
// be S_b-invariant. Adjoint runs the transposed chain (one F_j back to E_i
// per step) from every codomain representative and reads the psi entry as
// the coefficient of that representative. Auto picks the one with fewer
// paths per word.
enum class ChainDirection { Auto, Forward, Adjoint };

// Matrix of the transposed chain: entry (r, c) is the coefficient of the
// codomain representative r in the chain image of the domain orbit sum c.
SparseExactMatrix adjoint_chain_matrix(const OrbitSumBasis& domain, std::span<const RaisingOp> chain,
                                       const OrbitSumBasis& codomain);

PsiMatrix psi_composed(int a, int b, int limit = kDefaultPsiLimit, ChainDirection direction = ChainDirection::Auto);
// Closed form: the orbit sum of a block partition P maps to a! (ab)^(-ab)
// times the sum of the codomain orbit sums R such that every block of P meets
// every block of R in exactly one position.
PsiMatrix psi_fused(int a, int b, int limit = kDefaultPsiLimit);

struct FactorMap {
  OrbitSumBasis domain;
  OrbitSumBasis codomain;
  SparseExactMatrix matrix;
};

// S_a orbit sums of the (a x B, (0^B, a)) weight space.
OrbitSumBasis intermediate_basis(int a, int b);
// S_B orbit sums of the (empty, b x a) weight space; F_b is not permuted.
OrbitSumBasis left_codomain_basis(int a, int b);

// Both require 1 <= a < b and ab <= limit.
FactorMap right_factor(int a, int b, int limit = kDefaultPsiLimit);
// The image of the left factor is invariant under S_B but not under S_b,
// so its codomain is expressed in S_B orbit sums.
FactorMap left_factor(int a, int b, int limit = kDefaultPsiLimit);

// Rewrites psi from S_b orbit sums to the finer S_B orbit sums of
// left_codomain_basis: every S_b orbit sum is the sum of the S_B orbit sums
// inside it.
SparseExactMatrix refine_codomain(const PsiMatrix& psi, const OrbitSumBasis& finer);

struct DirectSumReport {
  std::size_t blocks = 0;           // distinct position sets Q in the domain
  std::size_t columns_checked = 0;
  bool disjoint = true;
  std::string counterexample;       // first offending (column, row), if any
};

// Q of a word is the set of positions holding F_b. Checks that every column
// of the left factor only reaches rows with the same Q, which makes the row
// supports of distinct Q-blocks disjoint.
DirectSumReport left_factor_direct_sum(const FactorMap& left, int a, int b);

struct InvarianceReport {
  std::size_t columns = 0;
  bool all_fixed = true;
  std::optional<Index> first_failure;
};

// Images of the domain orbit sums under the right factor chain, tested
// against the adjacent transpositions of E_1..E_a.
InvarianceReport right_factor_invariance(int a, int b, int limit = kDefaultPsiLimit);
// Images under the full psi chain, tested against transpositions of F_1..F_b.
InvarianceReport psi_image_invariance(int a, int b, int limit = kDefaultPsiLimit);

// Basis of Sym^count(Sym^degree C^n): multisets of `count` monomials of
// degree `degree` in n variables. A monomial is packed as its sorted
// variable indices, four bits each; an element is the sorted list of its
// monomials. Elements are listed in lexicographic order.
class MonomialMultisetBasis {
 public:
  MonomialMultisetBasis() = default;
  MonomialMultisetBasis(int count, int degree, int n, std::vector<std::vector<std::uint64_t>> elements);

  int count() const noexcept { return count_; }
  int degree() const noexcept { return degree_; }
  int variables() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::uint64_t>& element(Index i) const { return elements_[i]; }
  std::optional<Index> index_of(const std::vector<std::uint64_t>& element) const;

 private:
  int count_ = 0;
  int degree_ = 0;
  int n_ = 0;
  std::vector<std::vector<std::uint64_t>> elements_;
};

inline constexpr std::size_t kDefaultPolyLimit = 2'000'000;

// Sorted variable indices of every monomial of the degree, lexicographic.
std::vector<std::uint64_t> monomials(int degree, int n);
MonomialMultisetBasis monomial_multiset_basis(int count, int degree, int n, std::size_t limit = kDefaultPolyLimit);

// Matrix of the polynomial map in monomial-multiset bases. The image of
// {M_1, ..., M_a} is the sum, over every choice of a distinct ordering of
// each M_k as a sequence of b variables, of the multiset of the b column
// products. Entries are integers; the scalar convention is 1.
SparseExactMatrix psi_poly(int a, int b, int n, std::size_t limit = kDefaultPolyLimit);

}  // namespace fh

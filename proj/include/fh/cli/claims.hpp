#pragma once

// Property suites behind `fhm verify`. Each suite checks every instance in
// its family exactly and reports the first counterexample.

#include <string>
#include <utility>
#include <vector>

namespace fh::cli {

struct ClaimResult {
  std::string claim;
  bool passed = true;
  std::size_t checks = 0;
  std::string counterexample;
  double seconds = 0;
};

using Shape = std::pair<int, int>;

// Pairs (a, b) with 1 <= a < b and ab <= max_ab.
std::vector<Shape> factor_shapes(int max_ab);

// phi_{i,j} phi_{i',j'} = phi_{i',j'} phi_{i,j} for every alphabet with
// a, b >= 1 and a + b <= max_letters, every content of length
// 1..max_length and every pair of distinct operators.
ClaimResult verify_commute(int max_length, int max_letters = 5);
// pi phi_{i,j}(w) = phi_{pi(i),j}(pi w) for all words of length <= max_length
// over alphabets with a + b <= max_letters, a <= 3.
ClaimResult verify_equivariance(int max_length, int max_letters = 4);
// Right-factor images of orbit sums are fixed by the S_a generators, and
// psi images are fixed by the S_b generators.
ClaimResult verify_invariance(const std::vector<Shape>& shapes);
// left_factor * right_factor = psi (composed), compared entry by entry in
// the finer S_B coordinates.
ClaimResult verify_factorization(const std::vector<Shape>& shapes);
// Q-block structure: the left factor maps each Q-block into rows of the same
// Q, the S_a-invariant intermediate space splits into C(ab, a) blocks, and
// each phi_{i,b} of the right factor chain is block diagonal for the
// complementary split with C(ab, B+i) blocks.
ClaimResult verify_qsplit(const std::vector<Shape>& shapes);
// Full column rank of zeta_gl2(B+i, i-1) for 1 <= i <= a < b, and the
// Kostka identity C(B+i, i-1) = sum of f^lambda over two-row lambda of B+i
// with lambda_2 <= i-1.
ClaimResult verify_zeta(const std::vector<Shape>& shapes);
// zeta applied to wedge_sym_vector(l, n, k) is a nonzero multiple of
// wedge_sym_vector(l, n, k+1) for all l <= k < n - l, n <= max_n.
ClaimResult verify_wedge(int max_n);

}  // namespace fh::cli

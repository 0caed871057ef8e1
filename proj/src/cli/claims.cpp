#include "fh/cli/claims.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fh/exactla.hpp"
#include "fh/foulkes_map.hpp"
#include "fh/tensorspace.hpp"

namespace fh::cli {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

void fail(ClaimResult& r, const std::string& what) {
  if (r.passed) r.counterexample = what;
  r.passed = false;
}

void compositions(int total, int parts, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    prefix.push_back(first);
    compositions(total - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Content> contents_of_length(int d, int a, int b) {
  std::vector<std::vector<int>> all;
  std::vector<int> prefix;
  compositions(d, a + b, prefix, all);
  std::vector<Content> out;
  for (const auto& c : all)
    out.push_back({WeakComposition(c.begin(), c.begin() + a), WeakComposition(c.begin() + a, c.end())});
  return out;
}

std::string describe(const Content& c) {
  auto list = [](const WeakComposition& w) {
    std::string s = "(";
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
    return s + ")";
  };
  return list(c.alpha) + "," + list(c.beta);
}

// outer o inner, or nothing when the composite is the zero map between
// formal spaces.
std::optional<SparseExactMatrix> compose(const RaisingOp& outer, const RaisingMap& inner) {
  if (inner.vanishes) return std::nullopt;
  const RaisingMap second = phi(outer.i, outer.j, inner.target);
  if (second.vanishes) return std::nullopt;
  return second.matrix.multiply(inner.matrix);
}

bool is_zero(const std::optional<SparseExactMatrix>& m) { return !m || m->nnz() == 0; }

}  // namespace

std::vector<Shape> factor_shapes(int max_ab) {
  std::vector<Shape> out;
  for (int a = 1; a * (a + 1) <= max_ab; ++a)
    for (int b = a + 1; a * b <= max_ab; ++b) out.emplace_back(a, b);
  return out;
}

ClaimResult verify_commute(int max_length, int max_letters) {
  Timer timer;
  ClaimResult r{"commute", true, 0, "", 0};
  for (int letters = 2; letters <= max_letters; ++letters)
    for (int a = 1; a < letters; ++a) {
      const int b = letters - a;
      std::vector<RaisingOp> ops;
      for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= b; ++j) ops.push_back({i, j});
      for (int d = 1; d <= max_length; ++d)
        for (const Content& content : contents_of_length(d, a, b)) {
          const WeightBasis basis = weight_basis(d, content.alpha, content.beta);
          std::vector<RaisingMap> first;
          for (const RaisingOp& op : ops) first.push_back(phi(op.i, op.j, basis));
          for (std::size_t k = 0; k < ops.size(); ++k)
            for (std::size_t l = k + 1; l < ops.size(); ++l) {
              const auto kl = compose(ops[k], first[l]);
              const auto lk = compose(ops[l], first[k]);
              ++r.checks;
              const bool same = (is_zero(kl) && is_zero(lk)) || (kl && lk && *kl == *lk);
              if (!same) {
                std::ostringstream what;
                what << "a=" << a << " b=" << b << " content " << describe(content) << " operators (" << ops[k].i
                     << "," << ops[k].j << ") and (" << ops[l].i << "," << ops[l].j << ")";
                fail(r, what.str());
              }
            }
        }
    }
  r.seconds = timer.seconds();
  return r;
}

ClaimResult verify_equivariance(int max_length, int max_letters) {
  Timer timer;
  ClaimResult r{"equivariance", true, 0, "", 0};
  for (int letters = 2; letters <= max_letters; ++letters)
    for (int a = 1; a < letters && a <= 3; ++a) {
      const int b = letters - a;
      const Alphabet alphabet(a, b);
      std::vector<int> pi(static_cast<std::size_t>(a));
      for (int d = 1; d <= max_length; ++d)
        for (const Content& content : contents_of_length(d, a, b)) {
          const WeightBasis basis = weight_basis(d, content.alpha, content.beta);
          std::iota(pi.begin(), pi.end(), 0);
          do {
            Content moved = content;
            for (int i = 0; i < a; ++i) moved.alpha[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] = content.alpha[static_cast<std::size_t>(i)];
            const WeightBasis moved_basis = weight_basis(d, moved.alpha, moved.beta);
            for (int i = 1; i <= a; ++i)
              for (int j = 1; j <= b; ++j) {
                const RaisingMap here = phi(i, j, basis);
                const RaisingMap there = phi(pi[static_cast<std::size_t>(i - 1)] + 1, j, moved_basis);
                for (Index col = 0; col < basis.size(); ++col) {
                  ++r.checks;
                  // pi applied to phi_{i,j}(w)
                  std::vector<std::pair<WordKey, Rational>> lhs;
                  if (!here.vanishes)
                    for (const auto& [row, v] : here.matrix.column(col))
                      lhs.emplace_back(sa_act(alphabet, pi, here.target.key(row), d), v);
                  // phi_{pi(i),j}(pi w)
                  std::vector<std::pair<WordKey, Rational>> rhs;
                  const auto moved_col = moved_basis.index_of(sa_act(alphabet, pi, basis.key(col), d));
                  if (!moved_col) {
                    fail(r, "permuted word missing from its weight basis");
                    continue;
                  }
                  if (!there.vanishes)
                    for (const auto& [row, v] : there.matrix.column(*moved_col))
                      rhs.emplace_back(there.target.key(row), v);
                  std::sort(lhs.begin(), lhs.end());
                  std::sort(rhs.begin(), rhs.end());
                  if (lhs != rhs) fail(r, "word " + word_to_string(alphabet, basis.key(col), d));
                }
              }
          } while (std::next_permutation(pi.begin(), pi.end()));
        }
    }
  r.seconds = timer.seconds();
  return r;
}

ClaimResult verify_invariance(const std::vector<Shape>& shapes) {
  Timer timer;
  ClaimResult r{"invariance", true, 0, "", 0};
  for (auto [a, b] : shapes) {
    const InvarianceReport right = right_factor_invariance(a, b);
    r.checks += right.columns;
    if (!right.all_fixed)
      fail(r, "right factor image of orbit sum " + std::to_string(*right.first_failure) + " for a=" +
                  std::to_string(a) + " b=" + std::to_string(b));
    const InvarianceReport image = psi_image_invariance(a, b);
    r.checks += image.columns;
    if (!image.all_fixed)
      fail(r, "psi image of orbit sum " + std::to_string(*image.first_failure) + " for a=" + std::to_string(a) +
                  " b=" + std::to_string(b) + " is not S_b-fixed");
  }
  r.seconds = timer.seconds();
  return r;
}

ClaimResult verify_factorization(const std::vector<Shape>& shapes) {
  Timer timer;
  ClaimResult r{"factorization", true, 0, "", 0};
  for (auto [a, b] : shapes) {
    const FactorMap right = right_factor(a, b);
    const FactorMap left = left_factor(a, b);
    const PsiMatrix psi = psi_composed(a, b);
    const SparseExactMatrix product = left.matrix.multiply(right.matrix);
    ++r.checks;
    if (!(product == refine_codomain(psi, left.codomain)))
      fail(r, "left * right differs from psi for a=" + std::to_string(a) + " b=" + std::to_string(b));
  }
  r.seconds = timer.seconds();
  return r;
}

ClaimResult verify_qsplit(const std::vector<Shape>& shapes) {
  Timer timer;
  ClaimResult r{"qsplit", true, 0, "", 0};
  for (auto [a, b] : shapes) {
    const std::string tag = " for a=" + std::to_string(a) + " b=" + std::to_string(b);
    const int d = a * b;
    const FactorMap left = left_factor(a, b);
    const DirectSumReport report = left_factor_direct_sum(left, a, b);
    ++r.checks;
    if (!report.disjoint) fail(r, "left factor mixes Q-blocks (" + report.counterexample + ")" + tag);
    if (BigInt(static_cast<unsigned long>(report.blocks)) != binomial(d, a))
      fail(r, "intermediate space has " + std::to_string(report.blocks) + " Q-blocks" + tag);

    const Alphabet alphabet(a, b);
    for (int i = 1; i <= a; ++i) {
      WeakComposition alpha(static_cast<std::size_t>(a), b);
      for (int k = 0; k < i - 1; ++k) alpha[static_cast<std::size_t>(k)] = b - 1;
      WeakComposition beta(static_cast<std::size_t>(b), 0);
      beta.back() = i - 1;
      const WeightBasis basis = weight_basis(d, alpha, beta);
      const RaisingMap step = phi(i, b, basis);
      std::vector<Code> marked;
      for (int c = 0; c < alphabet.size(); ++c)
        if (c != alphabet.e(i) && c != alphabet.f(b)) marked.push_back(static_cast<Code>(c));
      const SplitPattern source = q_block_split(basis.words(), d, marked);
      ++r.checks;
      if (BigInt(static_cast<unsigned long>(source.block_count())) != binomial(d, b - 1 + i))
        fail(r, "phi_{" + std::to_string(i) + ",b} source has " + std::to_string(source.block_count()) + " blocks" + tag);
      for (Index col = 0; col < basis.size(); ++col) {
        const std::uint32_t q = marked_mask(basis.key(col), d, marked);
        for (Index row : step.matrix.column_rows(col))
          if (marked_mask(step.target.key(row), d, marked) != q) {
            fail(r, "phi_{" + std::to_string(i) + ",b} leaves its Q-block" + tag);
            break;
          }
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

ClaimResult verify_zeta(const std::vector<Shape>& shapes) {
  Timer timer;
  ClaimResult r{"zeta", true, 0, "", 0};
  std::set<std::pair<int, int>> cases;  // (n, k) with n = B+i, k = i-1
  std::map<std::pair<int, int>, int> b_of;
  for (auto [a, b] : shapes)
    for (int i = 1; i <= a; ++i) {
      cases.emplace(b - 1 + i, i - 1);
      b_of[{b - 1 + i, i - 1}] = b;
    }
  for (auto [n, k] : cases) {
    const std::string tag = " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
    const RankCertificate cert = certify_injective(zeta_gl2(n, k));
    ++r.checks;
    if (!cert.injective || cert.cols != binomial(n, k).get_ui()) fail(r, "zeta not injective" + tag);

    BigInt sum = 0;
    for (const Partition& lambda : partitions_of(n, 2)) {
      const WeakComposition weight{b_of[{n, k}], k};
      const BigInt kostka_number = kostka(lambda, weight);
      const bool expected_one = lambda[1] <= k;
      if (kostka_number != (expected_one ? 1 : 0)) fail(r, "Kostka number of " + lambda.to_string() + tag);
      if (expected_one) sum += dim_irrep_sym(lambda);
    }
    ++r.checks;
    if (sum != binomial(n, k)) fail(r, "Kostka dimension identity" + tag);
  }
  r.seconds = timer.seconds();
  return r;
}

ClaimResult verify_wedge(int max_n) {
  Timer timer;
  ClaimResult r{"wedge", true, 0, "", 0};
  for (int n = 1; n <= max_n; ++n)
    for (int l = 0; 2 * l <= n; ++l)
      for (int k = l; k < n - l; ++k) {
        const std::string tag = "lambda2=" + std::to_string(l) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
        const SparseExactMatrix zeta = zeta_gl2(n, k);
        std::vector<Rational> v(zeta.cols());
        for (const auto& [index, c] : wedge_sym_vector(l, n, k)) v[index] = c;
        const std::vector<Rational> image = zeta.apply(v);
        std::vector<Rational> target(zeta.rows());
        for (const auto& [index, c] : wedge_sym_vector(l, n, k + 1)) target[index] = c;
        ++r.checks;
        std::optional<Rational> scale;
        bool ok = true;
        for (std::size_t t = 0; t < target.size() && ok; ++t) {
          if (sgn(target[t]) == 0) {
            ok = sgn(image[t]) == 0;
            continue;
          }
          if (!scale) scale = image[t] / target[t];
          ok = image[t] == *scale * target[t];
        }
        if (!ok || !scale || sgn(*scale) == 0) fail(r, "image not a nonzero multiple of the shifted vector: " + tag);
      }
  r.seconds = timer.seconds();
  return r;
}

}  // namespace fh::cli

#include "fh/foulkes_map.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fh/errors.hpp"

namespace fh {

namespace {

// Intermediate merges keep unmerged combinations from growing without bound.
constexpr std::size_t kMergeThreshold = std::size_t{1} << 22;
constexpr std::size_t kMaxTerms = std::size_t{1} << 26;

// raise_combination with a bound on the number of generated terms.
WordCombination raise_bounded(const WordCombination& in, Code from, Code to) {
  if (in.terms.size() * static_cast<std::size_t>(in.length) > kMaxTerms)
    throw ResourceError("operator chain: combination of " + std::to_string(in.terms.size()) +
                        " words is too large to raise");
  return raise_combination(in, from, to);
}

void require_psi_size(int a, int b, int limit) {
  if (a < 1 || b < 1) throw ArgumentError("a and b must be positive");
  if (a * b > limit)
    throw ResourceError("ab = " + std::to_string(a * b) + " exceeds the configured limit " + std::to_string(limit));
}

void require_factor_shape(int a, int b, int limit) {
  require_psi_size(a, b, limit);
  if (a >= b) throw ArgumentError("the factorization needs a < b");
}

}  // namespace

std::vector<RaisingOp> psi_chain(int a, int b) {
  std::vector<RaisingOp> chain;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j) chain.push_back({i, j});
  return chain;
}

std::vector<RaisingOp> right_factor_chain(int a, int b) {
  std::vector<RaisingOp> chain;
  for (int i = 1; i <= a; ++i) chain.push_back({i, b});
  return chain;
}

std::vector<RaisingOp> left_factor_chain(int a, int b) {
  std::vector<RaisingOp> chain;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j < b; ++j) chain.push_back({i, j});
  return chain;
}

std::vector<Content> content_trajectory(const Content& start, std::span<const RaisingOp> applied_in_order) {
  std::vector<Content> out{start};
  for (const RaisingOp& op : applied_in_order) {
    Content next = out.back();
    --next.alpha.at(static_cast<std::size_t>(op.i - 1));
    ++next.beta.at(static_cast<std::size_t>(op.j - 1));
    out.push_back(std::move(next));
  }
  return out;
}

ScaledCombination apply_chain(Alphabet alphabet, std::span<const RaisingOp> chain, WordCombination start) {
  ScaledCombination out;
  out.words = std::move(start);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    out.words = raise_bounded(out.words, alphabet.e(it->i), alphabet.f(it->j));
    out.scale /= out.words.length;
    if (out.words.terms.size() > kMergeThreshold) out.words.normalise();
  }
  out.words.normalise();
  return out;
}

bool is_fixed_by_generators(const WordCombination& c, LetterRange range) {
  for (int k = 0; k + 1 < range.count; ++k) {
    const Code x = static_cast<Code>(range.first + k);
    const Code y = static_cast<Code>(x + 1);
    std::vector<std::pair<WordKey, std::int64_t>> image;
    image.reserve(c.terms.size());
    for (const auto& [key, count] : c.terms) {
      WordKey swapped = key;
      for (int p = 0; p < c.length; ++p) {
        const Code code = code_at(key, c.length, p);
        if (code == x) swapped = with_code(swapped, c.length, p, y);
        else if (code == y) swapped = with_code(swapped, c.length, p, x);
      }
      image.emplace_back(swapped, count);
    }
    std::sort(image.begin(), image.end());
    if (image != c.terms) return false;
  }
  return true;
}

std::vector<std::pair<Index, std::int64_t>> orbit_coordinates(const WordCombination& c, const OrbitSumBasis& basis) {
  std::vector<std::pair<Index, std::int64_t>> hits;
  hits.reserve(c.terms.size());
  for (const auto& [key, count] : c.terms) {
    const auto index = basis.index_of(key);
    if (!index) throw ConsistencyError("image word " + word_to_string(basis.alphabet(), key, c.length) +
                                       " lies outside the target space");
    hits.emplace_back(*index, count);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::pair<Index, std::int64_t>> out;
  for (std::size_t k = 0; k < hits.size();) {
    std::size_t t = k;
    while (t < hits.size() && hits[t].first == hits[k].first) {
      if (hits[t].second != hits[k].second)
        throw ConsistencyError("image is not invariant: unequal multiplicities within one orbit");
      ++t;
    }
    if (t - k != basis.orbit_size(hits[k].first))
      throw ConsistencyError("image is not invariant: incomplete orbit");
    out.push_back(hits[k]);
    k = t;
  }
  return out;
}

SparseExactMatrix chain_matrix(const OrbitSumBasis& domain, std::span<const RaisingOp> chain,
                               const OrbitSumBasis& codomain) {
  SparseMatrixBuilder builder(static_cast<Index>(codomain.size()), static_cast<Index>(domain.size()));
  std::map<std::int64_t, ValueId> ids;
  std::optional<Rational> common_scale;
  for (Index col = 0; col < domain.size(); ++col) {
    WordCombination start;
    start.length = domain.length();
    for (WordKey w : domain.orbit(col)) start.terms.emplace_back(w, 1);
    const ScaledCombination image = apply_chain(domain.alphabet(), chain, std::move(start));
    if (!common_scale) common_scale = image.scale;
    if (*common_scale != image.scale) throw ConsistencyError("chain_matrix: scale differs between columns");
    std::vector<std::pair<Index, ValueId>> column;
    for (const auto& [row, count] : orbit_coordinates(image.words, codomain)) {
      auto it = ids.find(count);
      if (it == ids.end()) it = ids.emplace(count, builder.intern(*common_scale * Rational(count))).first;
      column.emplace_back(row, it->second);
    }
    builder.add_column(std::move(column));
  }
  return std::move(builder).finish();
}

SparseExactMatrix adjoint_chain_matrix(const OrbitSumBasis& domain, std::span<const RaisingOp> chain,
                                       const OrbitSumBasis& codomain) {
  const Alphabet alphabet = domain.alphabet();
  std::vector<Triplet> entries;
  std::vector<std::int64_t> sums(domain.size(), 0);
  std::vector<Index> touched;
  for (Index row = 0; row < codomain.size(); ++row) {
    ScaledCombination c;
    c.words.length = codomain.length();
    c.words.terms.emplace_back(codomain.representative(row), 1);
    // Transpose of a product: the leftmost operator is undone first.
    for (const RaisingOp& op : chain) {
      c.words = raise_bounded(c.words, alphabet.f(op.j), alphabet.e(op.i));
      c.scale /= c.words.length;
      if (c.words.terms.size() > kMergeThreshold) c.words.normalise();
    }
    c.words.normalise();
    for (const auto& [key, count] : c.words.terms) {
      const auto col = domain.index_of(key);
      if (!col) throw ConsistencyError("adjoint image word " + word_to_string(alphabet, key, c.words.length) +
                                       " lies outside the domain space");
      if (sums[*col] == 0) touched.push_back(*col);
      if (__builtin_add_overflow(sums[*col], count, &sums[*col])) throw ResourceError("adjoint chain: overflow");
    }
    for (Index col : touched) {
      if (sums[col] != 0) entries.push_back({row, col, c.scale * Rational(sums[col])});
      sums[col] = 0;
    }
    touched.clear();
  }
  return SparseExactMatrix::from_triplets(static_cast<Index>(codomain.size()), static_cast<Index>(domain.size()),
                                          std::move(entries));
}

namespace {

// Log of the number of words reached from one start word, summed over the
// orbit for the forward direction.
ChainDirection cheaper_direction(const OrbitSumBasis& domain, std::span<const RaisingOp> chain,
                                 const OrbitSumBasis& codomain) {
  double forward = std::lgamma(domain.range().count + 1.0);
  Content content = domain.content();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    forward += std::log(std::max(1, content.alpha[static_cast<std::size_t>(it->i - 1)]--));
    ++content.beta[static_cast<std::size_t>(it->j - 1)];
  }
  double adjoint = 0;
  content = codomain.content();
  for (const RaisingOp& op : chain) {
    adjoint += std::log(std::max(1, content.beta[static_cast<std::size_t>(op.j - 1)]--));
    ++content.alpha[static_cast<std::size_t>(op.i - 1)];
  }
  return adjoint < forward ? ChainDirection::Adjoint : ChainDirection::Forward;
}

SparseExactMatrix auto_chain_matrix(const OrbitSumBasis& domain, std::span<const RaisingOp> chain,
                                    const OrbitSumBasis& codomain) {
  return cheaper_direction(domain, chain, codomain) == ChainDirection::Forward
             ? chain_matrix(domain, chain, codomain)
             : adjoint_chain_matrix(domain, chain, codomain);
}

}  // namespace

PsiMatrix psi_composed(int a, int b, int limit, ChainDirection direction) {
  require_psi_size(a, b, limit);
  PsiMatrix out{a, b, orbit_sum_basis(a, b, limit), codomain_orbit_sum_basis(a, b, limit), {}};
  const auto chain = psi_chain(a, b);
  if (direction == ChainDirection::Auto) direction = cheaper_direction(out.domain, chain, out.codomain);
  out.matrix = direction == ChainDirection::Forward ? chain_matrix(out.domain, chain, out.codomain)
                                                    : adjoint_chain_matrix(out.domain, chain, out.codomain);
  return out;
}

PsiMatrix psi_fused(int a, int b, int limit) {
  require_psi_size(a, b, limit);
  PsiMatrix out{a, b, orbit_sum_basis(a, b, limit), codomain_orbit_sum_basis(a, b, limit), {}};
  const int d = a * b;

  // Only blocks after the first are permuted, so a = 1 needs none.
  std::vector<std::vector<int>> perms;
  if (a > 1) {
    std::vector<int> perm(static_cast<std::size_t>(b));
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  }

  SparseMatrixBuilder builder(static_cast<Index>(out.codomain.size()), static_cast<Index>(out.domain.size()));
  BigInt power = 1;
  for (int k = 0; k < d; ++k) power *= d;
  const ValueId entry = builder.intern(Rational(factorial(a)) / Rational(power));

  const Code f1 = static_cast<Code>(a);
  for (Index col = 0; col < out.domain.size(); ++col) {
    const std::vector<std::vector<int>> blocks = block_partition_of(out.domain, col).blocks();
    std::vector<Code> word(static_cast<std::size_t>(d));
    // The first block fixes the labelling of the codomain blocks; every
    // other block ranges over all bijections onto F_1..F_b.
    for (int k = 0; k < b; ++k) word[static_cast<std::size_t>(blocks[0][static_cast<std::size_t>(k)])] = static_cast<Code>(f1 + k);
    std::vector<std::size_t> choice(static_cast<std::size_t>(a), 0);
    std::vector<std::pair<Index, ValueId>> column;
    while (true) {
      for (int blk = 1; blk < a; ++blk) {
        const auto& p = perms[choice[static_cast<std::size_t>(blk)]];
        for (int k = 0; k < b; ++k)
          word[static_cast<std::size_t>(blocks[static_cast<std::size_t>(blk)][static_cast<std::size_t>(k)])] =
              static_cast<Code>(f1 + p[static_cast<std::size_t>(k)]);
      }
      const auto row = out.codomain.index_of(pack_word(word));
      if (!row) throw ConsistencyError("psi_fused: word outside the codomain");
      column.emplace_back(*row, entry);
      int blk = a - 1;
      while (blk >= 1 && ++choice[static_cast<std::size_t>(blk)] == perms.size()) choice[static_cast<std::size_t>(blk--)] = 0;
      if (blk < 1) break;
    }
    builder.add_column(std::move(column));
  }
  out.matrix = std::move(builder).finish();
  return out;
}

namespace {

// Orbit sums of words with `fixed_count` copies of the letter `fixed` and the
// remaining positions split into `blocks` blocks of `block_size` letters
// from the range starting at `first`, labelled in order of first appearance.
OrbitSumBasis fixed_letter_orbit_sums(Alphabet alphabet, const Content& content, Code fixed, int fixed_count,
                                      Code first, int blocks, int block_size) {
  const int d = fixed_count + blocks * block_size;
  const auto partitions = enumerate_block_partitions(blocks, block_size, kMaxWordLength);
  std::vector<WordKey> reps;
  std::vector<bool> chosen(static_cast<std::size_t>(d), false);
  std::fill(chosen.end() - fixed_count, chosen.end(), true);
  std::vector<Code> word(static_cast<std::size_t>(d));
  do {
    for (const BlockSetPartition& p : partitions) {
      int next = 0;
      for (int pos = 0; pos < d; ++pos)
        word[static_cast<std::size_t>(pos)] =
            chosen[static_cast<std::size_t>(pos)] ? fixed : static_cast<Code>(first + p.label(next++));
      reps.push_back(pack_word(word));
    }
  } while (std::next_permutation(chosen.begin(), chosen.end()));
  std::sort(reps.begin(), reps.end());
  return OrbitSumBasis(alphabet, d, content, {first, blocks}, std::move(reps));
}

}  // namespace

OrbitSumBasis intermediate_basis(int a, int b) {
  const Alphabet alphabet(a, b);
  Content content{WeakComposition(static_cast<std::size_t>(a), b - 1), WeakComposition(static_cast<std::size_t>(b), 0)};
  content.beta.back() = a;
  return fixed_letter_orbit_sums(alphabet, content, alphabet.f(b), a, 0, a, b - 1);
}

OrbitSumBasis left_codomain_basis(int a, int b) {
  const Alphabet alphabet(a, b);
  Content content{WeakComposition(static_cast<std::size_t>(a), 0), WeakComposition(static_cast<std::size_t>(b), a)};
  return fixed_letter_orbit_sums(alphabet, content, alphabet.f(b), a, alphabet.f(1), b - 1, a);
}

FactorMap right_factor(int a, int b, int limit) {
  require_factor_shape(a, b, limit);
  FactorMap out{orbit_sum_basis(a, b, limit), intermediate_basis(a, b), {}};
  out.matrix = auto_chain_matrix(out.domain, right_factor_chain(a, b), out.codomain);
  return out;
}

FactorMap left_factor(int a, int b, int limit) {
  require_factor_shape(a, b, limit);
  FactorMap out{intermediate_basis(a, b), left_codomain_basis(a, b), {}};
  out.matrix = auto_chain_matrix(out.domain, left_factor_chain(a, b), out.codomain);
  return out;
}

SparseExactMatrix refine_codomain(const PsiMatrix& psi, const OrbitSumBasis& finer) {
  std::vector<std::vector<Index>> parts(psi.codomain.size());
  for (Index k = 0; k < finer.size(); ++k) {
    const auto coarse = psi.codomain.index_of(finer.representative(k));
    if (!coarse) throw ArgumentError("refine_codomain: finer orbit outside the codomain");
    parts[*coarse].push_back(k);
  }
  const SparseExactMatrix& m = psi.matrix;
  SparseMatrixBuilder builder(static_cast<Index>(finer.size()), m.cols());
  std::vector<ValueId> ids;
  for (const Rational& v : m.distinct_values()) ids.push_back(builder.intern(v));
  for (Index c = 0; c < m.cols(); ++c) {
    std::vector<std::pair<Index, ValueId>> column;
    auto rows = m.column_rows(c);
    auto vals = m.column_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (Index f : parts[rows[k]]) column.emplace_back(f, ids[vals[k]]);
    builder.add_column(std::move(column));
  }
  return std::move(builder).finish();
}

DirectSumReport left_factor_direct_sum(const FactorMap& left, int a, int b) {
  DirectSumReport report;
  const int d = a * b;
  const Code fb[] = {static_cast<Code>(a + b - 1)};
  std::vector<std::uint32_t> row_mask(left.codomain.size());
  for (Index r = 0; r < left.codomain.size(); ++r) row_mask[r] = marked_mask(left.codomain.representative(r), d, fb);
  std::vector<std::uint32_t> seen;
  for (Index c = 0; c < left.matrix.cols(); ++c) {
    const std::uint32_t q = marked_mask(left.domain.representative(c), d, fb);
    seen.push_back(q);
    for (Index r : left.matrix.column_rows(c)) {
      if (row_mask[r] != q && report.disjoint) {
        report.disjoint = false;
        report.counterexample = "column " + std::to_string(c) + " reaches row " + std::to_string(r);
      }
    }
    ++report.columns_checked;
  }
  std::sort(seen.begin(), seen.end());
  report.blocks = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
  return report;
}

namespace {

InvarianceReport image_invariance(const OrbitSumBasis& domain, std::span<const RaisingOp> chain, LetterRange range) {
  InvarianceReport report;
  for (Index col = 0; col < domain.size(); ++col) {
    WordCombination start;
    start.length = domain.length();
    for (WordKey w : domain.orbit(col)) start.terms.emplace_back(w, 1);
    const ScaledCombination image = apply_chain(domain.alphabet(), chain, std::move(start));
    ++report.columns;
    if (!is_fixed_by_generators(image.words, range)) {
      report.all_fixed = false;
      if (!report.first_failure) report.first_failure = col;
    }
  }
  return report;
}

}  // namespace

InvarianceReport right_factor_invariance(int a, int b, int limit) {
  require_factor_shape(a, b, limit);
  const auto chain = right_factor_chain(a, b);
  return image_invariance(orbit_sum_basis(a, b, limit), chain, {0, a});
}

InvarianceReport psi_image_invariance(int a, int b, int limit) {
  require_psi_size(a, b, limit);
  const auto chain = psi_chain(a, b);
  return image_invariance(orbit_sum_basis(a, b, limit), chain, {static_cast<Code>(a), b});
}

}  // namespace fh

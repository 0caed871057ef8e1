#include "fh/plethysm.hpp"

#include <algorithm>
#include <mutex>

#include "fh/errors.hpp"
#include "fh/foulkes_map.hpp"

namespace fh {

BigInt MultiplicityVector::at(const Partition& lambda) const {
  auto it = mults.find(lambda);
  return it == mults.end() ? BigInt(0) : it->second;
}

namespace {

void require_oracle_size(int a, int b, int limit) {
  if (a < 1 || b < 1) throw ArgumentError("a and b must be positive");
  if (a * b > limit)
    throw ResourceError("ab = " + std::to_string(a * b) + " exceeds the oracle limit " + std::to_string(limit));
}

// sigma(x) for the permutation with consecutive cycles of the given lengths.
std::vector<int> canonical_permutation(const Partition& mu) {
  std::vector<int> sigma(static_cast<std::size_t>(mu.size()));
  int start = 0;
  for (int len : mu.parts()) {
    for (int k = 0; k < len; ++k) sigma[static_cast<std::size_t>(start + k)] = start + (k + 1) % len;
    start += len;
  }
  return sigma;
}

}  // namespace

BigInt perm_character_value(std::span<const BlockSetPartition> partitions, const Partition& mu) {
  const std::vector<int> sigma = canonical_permutation(mu);
  long fixed = 0;
  std::vector<int> image;
  for (const BlockSetPartition& p : partitions) {
    if (p.ground_size() != mu.size()) throw ArgumentError("perm_character_value: size mismatch");
    // p is fixed when block labels are carried consistently along sigma.
    image.assign(static_cast<std::size_t>(p.block_count()), -1);
    bool ok = true;
    for (int x = 0; x < mu.size() && ok; ++x) {
      const int from = p.label(x);
      const int to = p.label(sigma[static_cast<std::size_t>(x)]);
      int& slot = image[static_cast<std::size_t>(from)];
      if (slot < 0) slot = to;
      else ok = slot == to;
    }
    if (ok) ++fixed;
  }
  return fixed;
}

BigInt perm_character_value(int a, int b, const Partition& mu, int limit) {
  require_oracle_size(a, b, limit);
  if (mu.size() != a * b) throw ArgumentError("perm_character_value: mu must be a partition of ab");
  return perm_character_value(enumerate_block_partitions(a, b, limit), mu);
}

MultiplicityVector multiplicities(int a, int b, const CharacterTable& table,
                                  std::span<const BlockSetPartition> partitions) {
  const int n = a * b;
  if (table.n != n) throw ArgumentError("multiplicities: character table has the wrong degree");
  std::vector<BigInt> weighted;  // |class(mu)| * perm(mu)
  for (const Partition& mu : table.partitions) weighted.push_back(class_size(mu) * perm_character_value(partitions, mu));
  const BigInt order = factorial(n);
  MultiplicityVector out;
  out.n = n;
  for (std::size_t l = 0; l < table.partitions.size(); ++l) {
    BigInt sum = 0;
    for (std::size_t m = 0; m < table.partitions.size(); ++m) sum += weighted[m] * table.values[l][m];
    if (!mpz_divisible_p(sum.get_mpz_t(), order.get_mpz_t()) || sgn(sum) < 0)
      throw ConsistencyError("multiplicity of " + table.partitions[l].to_string() +
                             " is not a nonnegative integer");
    out.mults.emplace(table.partitions[l], sum / order);
  }
  return out;
}

MultiplicityVector multiplicities(int a, int b, int limit) {
  require_oracle_size(a, b, limit);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, MultiplicityVector> memo;
  {
    std::lock_guard lock(mutex);
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
  }
  MultiplicityVector result = multiplicities(a, b, character_table(a * b), enumerate_block_partitions(a, b, limit));
  std::lock_guard lock(mutex);
  memo.emplace(std::make_pair(a, b), result);
  return result;
}

BigInt multiplicity(const Partition& lambda, int a, int b, int limit) {
  if (lambda.size() != a * b) throw ArgumentError("multiplicity: lambda must be a partition of ab");
  return multiplicities(a, b, limit).at(lambda);
}

// ------------------------------------------------------ monomial oracle

namespace {

struct WeightCounter {
  int a;
  int n;
  std::vector<std::vector<int>> exponents;  // per monomial
  std::vector<int> weight;
  std::map<std::vector<int>, BigInt> dominant;
  std::size_t visited = 0;
  std::size_t limit;

  void run(int remaining, std::size_t smallest) {
    if (remaining == 0) {
      if (++visited > limit) throw ResourceError("plethysm_via_monomials: basis exceeds the limit");
      if (std::is_sorted(weight.begin(), weight.end(), std::greater<>())) dominant[weight] += 1;
      return;
    }
    for (std::size_t k = smallest; k < exponents.size(); ++k) {
      for (int v = 0; v < n; ++v) weight[static_cast<std::size_t>(v)] += exponents[k][static_cast<std::size_t>(v)];
      run(remaining - 1, k);
      for (int v = 0; v < n; ++v) weight[static_cast<std::size_t>(v)] -= exponents[k][static_cast<std::size_t>(v)];
    }
  }
};

}  // namespace

MultiplicityVector plethysm_via_monomials(int a, int b, int n, std::size_t limit) {
  if (a < 1 || b < 1 || n < 1) throw ArgumentError("plethysm_via_monomials: a, b, n must be positive");
  WeightCounter counter{a, n, {}, std::vector<int>(static_cast<std::size_t>(n), 0), {}, 0, limit};
  for (std::uint64_t m : monomials(b, n)) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < b; ++k) ++e[static_cast<std::size_t>((m >> (4 * k)) & 0xF)];
    counter.exponents.push_back(std::move(e));
  }
  counter.run(a, 0);

  // Reverse lexicographic order extends dominance, so the Kostka matrix is
  // lower unitriangular in this order; checked below for the shapes used.
  const std::vector<Partition> shapes = partitions_of(a * b, n);
  auto weight_of = [n](const Partition& p) {
    WeakComposition w(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < p.length(); ++k) w[static_cast<std::size_t>(k)] = p[k];
    return w;
  };
  MultiplicityVector out;
  out.n = a * b;
  std::vector<BigInt> solved;
  for (std::size_t m = 0; m < shapes.size(); ++m) {
    const WeakComposition mu = weight_of(shapes[m]);
    if (kostka(shapes[m], mu) != 1) throw ConsistencyError("Kostka diagonal entry differs from 1");
    for (std::size_t l = m + 1; l < shapes.size(); ++l)
      if (kostka(shapes[l], mu) != 0) throw ConsistencyError("Kostka matrix is not unitriangular in this order");
    auto it = counter.dominant.find(std::vector<int>(mu.begin(), mu.end()));
    BigInt value = it == counter.dominant.end() ? BigInt(0) : it->second;
    for (std::size_t l = 0; l < m; ++l)
      if (sgn(solved[l]) != 0) value -= solved[l] * kostka(shapes[l], mu);
    if (sgn(value) < 0) throw ConsistencyError("negative Schur coefficient in the monomial oracle");
    solved.push_back(value);
    out.mults.emplace(shapes[m], value);
  }
  return out;
}

// -------------------------------------------------------------- reports

namespace {

template <class Accept>
ComparisonReport compare(int a, int b, const std::vector<Partition>& shapes, const MultiplicityVector& left,
                         const MultiplicityVector& right, Accept accept) {
  ComparisonReport report{a, b, {}, true, {}};
  for (const Partition& lambda : shapes) {
    ComparisonRow row{lambda, left.at(lambda), right.at(lambda), true};
    row.ok = accept(row.left, row.right);
    if (!row.ok) {
      report.holds = false;
      report.violations.push_back(lambda);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

ComparisonReport foulkes_report(int a, int b, const MultiplicityVector& left, const MultiplicityVector& right) {
  if (a > b) throw ArgumentError("foulkes_check: needs a <= b");
  return compare(a, b, partitions_of(a * b), left, right, [](const BigInt& l, const BigInt& r) { return l <= r; });
}

ComparisonReport hermite_report(int a, int b, const MultiplicityVector& left, const MultiplicityVector& right) {
  return compare(a, b, partitions_of(a * b, 2), left, right, [](const BigInt& l, const BigInt& r) { return l == r; });
}

ComparisonReport foulkes_check(int a, int b, int limit) {
  if (a > b) throw ArgumentError("foulkes_check: needs a <= b");
  require_oracle_size(a, b, limit);
  return foulkes_report(a, b, multiplicities(a, b, limit), multiplicities(b, a, limit));
}

ComparisonReport hermite_check(int a, int b, int limit) {
  require_oracle_size(a, b, limit);
  return hermite_report(a, b, multiplicities(a, b, limit), multiplicities(b, a, limit));
}

KernelConsistencyReport kernel_consistency(int a, int b, std::optional<int> n, const CertifyOptions& options) {
  require_oracle_size(a, b, kOracleLimit);
  KernelConsistencyReport report;
  report.a = a;
  report.b = b;
  report.n = n;

  const MultiplicityVector left = multiplicities(a, b);
  const MultiplicityVector right = multiplicities(b, a);
  report.psi_kernel_lower_bound = 0;
  report.poly_kernel_lower_bound = 0;
  for (const auto& [lambda, m] : left.mults) {
    const BigInt excess = m - right.at(lambda);
    if (sgn(excess) <= 0) continue;
    report.psi_kernel_lower_bound += excess * dim_irrep_sym(lambda);
    if (n) report.poly_kernel_lower_bound += excess * dim_irrep_gl(lambda, *n);
  }

  const PsiMatrix psi = psi_fused(a, b);
  const RankCertificate cert = certify_injective(psi.matrix, options);
  report.psi_cols = psi.matrix.cols();
  report.psi_rows = psi.matrix.rows();
  report.psi_rank = cert.rank;
  report.psi_method = cert.method;
  report.psi_rank_exact = !cert.inconclusive;
  bool consistent = report.psi_rank_exact && BigInt(static_cast<unsigned long>(report.psi_kernel())) ==
                                                 report.psi_kernel_lower_bound;

  if (n) {
    const SparseExactMatrix poly = psi_poly(a, b, *n);
    const RankCertificate poly_cert = certify_injective(poly, options);
    report.poly_cols = poly.cols();
    report.poly_rank = poly_cert.rank;
    report.poly_rank_exact = !poly_cert.inconclusive;
    consistent = consistent && report.poly_rank_exact &&
                 BigInt(static_cast<unsigned long>(report.poly_kernel())) == report.poly_kernel_lower_bound;
  }
  report.consistent = consistent;
  return report;
}

}  // namespace fh

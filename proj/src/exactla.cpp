#include "fh/exactla.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "fh/errors.hpp"

namespace fh {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 7; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<Prime> default_primes(std::size_t k) {
  std::vector<Prime> out;
  for (std::uint64_t candidate = (1ULL << 30) - 1; out.size() < k; candidate -= 2)
    if (is_prime(candidate)) out.push_back(static_cast<Prime>(candidate));
  return out;
}

std::vector<Prime> random_primes(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << 29, (1ULL << 30) - 1);
  std::vector<Prime> out;
  while (out.size() < k) {
    std::uint64_t c = dist(gen) | 1;
    while (!is_prime(c)) c += 2;
    if (c >= (1ULL << 30)) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(static_cast<Prime>(c));
  }
  return out;
}

std::string to_string(RankMethod method) { return method == RankMethod::Modular ? "modular" : "exact"; }

// =================================================================== mod p

namespace {

using Residue = std::uint32_t;

struct PrimeField {
  std::uint64_t p;
  std::uint64_t barrett;  // floor((2^64 - 1) / p)

  explicit PrimeField(Prime prime) : p(prime), barrett(~0ULL / prime) {}

  std::uint64_t reduce(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett) >> 64);
    std::uint64_t r = x - q * p;
    while (r >= p) r -= p;
    return r;
  }
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const { return reduce(x * y); }
  std::uint64_t inverse(std::uint64_t x) const {
    // x^(p-2)
    std::uint64_t result = 1;
    std::uint64_t base = x;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
  Residue from_rational(const Rational& v, Prime prime) const {
    const unsigned long den = mpz_fdiv_ui(v.get_den_mpz_t(), prime);
    if (den == 0) throw BadPrimeError(prime);
    const unsigned long num = mpz_fdiv_ui(v.get_num_mpz_t(), prime);
    return static_cast<Residue>(mul(num, inverse(den)));
  }
};

using SparseRow = std::vector<std::pair<Index, Residue>>;

// Rows of m (or of its transpose when m is wide) reduced mod p; the dense
// phase then works on vectors of length min(rows, cols).
struct ModularRows {
  Index width = 0;
  std::vector<SparseRow> rows;
};

ModularRows modular_rows(const SparseExactMatrix& m, const PrimeField& field, Prime p) {
  std::vector<Residue> residues;
  residues.reserve(m.distinct_values().size());
  for (const Rational& v : m.distinct_values()) residues.push_back(field.from_rational(v, p));

  ModularRows out;
  const bool tall = m.rows() >= m.cols();
  out.width = tall ? m.cols() : m.rows();
  out.rows.resize(tall ? m.rows() : m.cols());
  for (Index c = 0; c < m.cols(); ++c) {
    auto rows = m.column_rows(c);
    auto ids = m.column_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Residue v = residues[ids[k]];
      if (v == 0) continue;
      if (tall) out.rows[rows[k]].emplace_back(c, v);
      else out.rows[c].emplace_back(rows[k], v);
    }
  }
  // Tall case: entries arrive in column order, already sorted per row.
  if (!tall)
    for (auto& row : out.rows) std::sort(row.begin(), row.end());
  return out;
}

// Structured elimination: repeatedly pivot on the entry with the smallest
// Markowitz cost (r-1)(c-1) among the sparsest columns, until that cost says
// the active part has become too dense to be worth treating sparsely.
class SparseEliminator {
 public:
  SparseEliminator(ModularRows& data, const PrimeField& field, const ModularOptions& options)
      : data_(data), field_(field), options_(options), col_count_(data.width, 0), col_rows_(data.width),
        row_active_(data.rows.size(), 1), col_active_(data.width, 1) {
    for (Index r = 0; r < data_.rows.size(); ++r)
      for (auto [c, v] : data_.rows[r]) {
        ++col_count_[c];
        col_rows_[c].push_back(r);
      }
    for (Index c = 0; c < data_.width; ++c) by_count_.emplace(col_count_[c], c);
    active_cols_ = data_.width;
  }

  // Returns the number of pivots found.
  std::size_t run() {
    std::size_t rank = 0;
    while (!by_count_.empty()) {
      auto [count, col] = *by_count_.begin();
      if (count == 0) {
        deactivate_column(col);
        continue;
      }
      auto [pivot_row, cost] = choose_pivot();
      const double budget = std::max(64.0, options_.dense_switch_fill_ratio * static_cast<double>(active_cols_));
      if (static_cast<double>(cost) > budget) break;
      eliminate(pivot_row, pivot_col_);
      ++rank;
    }
    return rank;
  }

  // Remaining active rows restricted to active columns, with columns
  // renumbered densely.
  ModularRows remainder() const {
    ModularRows out;
    std::vector<Index> remap(data_.width, 0);
    Index next = 0;
    for (Index c = 0; c < data_.width; ++c)
      if (col_active_[c]) remap[c] = next++;
    out.width = next;
    for (Index r = 0; r < data_.rows.size(); ++r) {
      if (!row_active_[r]) continue;
      SparseRow row;
      for (auto [c, v] : data_.rows[r])
        if (col_active_[c]) row.emplace_back(remap[c], v);
      if (!row.empty()) out.rows.push_back(std::move(row));
    }
    return out;
  }

 private:
  bool row_has(Index r, Index c) const {
    const auto& row = data_.rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, Residue{0}));
    return it != row.end() && it->first == c;
  }

  std::pair<Index, std::uint64_t> choose_pivot() {
    std::uint64_t best_cost = ~0ULL;
    Index best_row = 0;
    int examined = 0;
    for (auto it = by_count_.begin(); it != by_count_.end() && examined < 4; ++it) {
      auto [count, col] = *it;
      if (count == 0) continue;
      ++examined;
      auto& candidates = col_rows_[col];
      std::erase_if(candidates, [&](Index r) { return !row_active_[r] || !row_has(r, col); });
      for (Index r : candidates) {
        const std::uint64_t cost =
            static_cast<std::uint64_t>(data_.rows[r].size() - 1) * static_cast<std::uint64_t>(count - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_row = r;
          pivot_col_ = col;
        }
      }
    }
    return {best_row, best_cost};
  }

  void set_count(Index c, std::size_t count) {
    if (col_active_[c]) {
      by_count_.erase({col_count_[c], c});
      by_count_.emplace(count, c);
    }
    col_count_[c] = count;
  }

  void deactivate_column(Index c) {
    by_count_.erase({col_count_[c], c});
    col_active_[c] = 0;
    col_rows_[c].clear();
    col_rows_[c].shrink_to_fit();
    --active_cols_;
  }

  void eliminate(Index pivot_row, Index pivot_col) {
    const SparseRow pivot = data_.rows[pivot_row];
    Residue pivot_value = 0;
    for (auto [c, v] : pivot)
      if (c == pivot_col) pivot_value = v;
    const std::uint64_t inv = field_.inverse(pivot_value);
    const std::uint64_t p = field_.p;

    row_active_[pivot_row] = 0;
    for (auto [c, v] : pivot) set_count(c, col_count_[c] - 1);

    const std::vector<Index> targets = col_rows_[pivot_col];
    for (Index r : targets) {
      if (r == pivot_row || !row_active_[r]) continue;
      SparseRow& row = data_.rows[r];
      auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(pivot_col, Residue{0}));
      if (it == row.end() || it->first != pivot_col) continue;
      const std::uint64_t factor = field_.mul(it->second, inv);
      const std::uint64_t neg = (p - factor) % p;

      SparseRow merged;
      merged.reserve(row.size() + pivot.size());
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].first < row[i].first) {
          const Index c = pivot[j].first;
          const auto v = static_cast<Residue>(field_.mul(neg, pivot[j].second));
          ++j;
          if (v == 0) continue;
          merged.emplace_back(c, v);
          set_count(c, col_count_[c] + 1);
          col_rows_[c].push_back(r);
        } else {
          const Index c = row[i].first;
          const auto v = static_cast<Residue>(field_.reduce(row[i].second + field_.mul(neg, pivot[j].second)));
          ++i;
          ++j;
          if (v == 0) {
            set_count(c, col_count_[c] - 1);
            continue;
          }
          merged.emplace_back(c, v);
        }
      }
      row = std::move(merged);
    }
    deactivate_column(pivot_col);
  }

  ModularRows& data_;
  const PrimeField& field_;
  const ModularOptions& options_;
  std::vector<std::size_t> col_count_;
  std::vector<std::vector<Index>> col_rows_;
  std::vector<char> row_active_;
  std::vector<char> col_active_;
  std::set<std::pair<std::size_t, Index>> by_count_;
  std::size_t active_cols_ = 0;
  Index pivot_col_ = 0;
};

// Dense elimination with delayed reduction: accumulators are 64 bit, every
// update adds less than p^2 < 2^60, so fifteen updates fit before a
// reduction is needed. Rows are processed in batches so that each stored
// pivot row is streamed from memory once per batch.
class DenseEliminator {
 public:
  DenseEliminator(Index width, const PrimeField& field) : width_(width), field_(field) {}

  std::size_t rank() const { return pivots_.size(); }
  bool full() const { return pivots_.size() == width_; }

  void add_batch(const std::vector<const SparseRow*>& batch) {
    const std::size_t n = batch.size();
    std::vector<std::vector<std::uint64_t>> acc(n, std::vector<std::uint64_t>(width_, 0));
    std::vector<int> pending(n, 0);
    for (std::size_t t = 0; t < n; ++t)
      for (auto [c, v] : *batch[t]) acc[t][c] = v;

    const std::size_t existing = pivots_.size();
    for (std::size_t k = 0; k < existing; ++k)
      for (std::size_t t = 0; t < n; ++t) apply_pivot(k, acc[t], pending[t]);

    for (std::size_t t = 0; t < n && !full(); ++t) {
      for (std::size_t k = existing; k < pivots_.size(); ++k) apply_pivot(k, acc[t], pending[t]);
      reduce_all(acc[t]);
      pending[t] = 0;
      Index lead = 0;
      while (lead < width_ && acc[t][lead] == 0) ++lead;
      if (lead == width_) continue;
      const std::uint64_t inv = field_.inverse(acc[t][lead]);
      std::vector<Residue> row(width_);
      for (Index j = 0; j < width_; ++j) row[j] = static_cast<Residue>(field_.mul(acc[t][j], inv));
      pivots_.push_back(std::move(row));
      pivot_cols_.push_back(lead);
    }
  }

 private:
  void apply_pivot(std::size_t k, std::vector<std::uint64_t>& acc, int& pending) {
    const Index col = pivot_cols_[k];
    const std::uint64_t x = field_.reduce(acc[col]);
    if (x == 0) {
      acc[col] = 0;
      return;
    }
    // Entries left of the pivot's leading column are zero.
    const auto factor = static_cast<Residue>(field_.p - x);
    const Residue* piv = pivots_[k].data();
    std::uint64_t* a = acc.data();
    for (Index j = col; j < width_; ++j) a[j] += static_cast<std::uint64_t>(factor) * piv[j];
    if (++pending == 15) {
      reduce_all(acc);
      pending = 0;
    }
  }

  void reduce_all(std::vector<std::uint64_t>& acc) const {
    for (auto& v : acc) v = field_.reduce(v);
  }

  Index width_;
  const PrimeField& field_;
  std::vector<std::vector<Residue>> pivots_;
  std::vector<Index> pivot_cols_;
};

}  // namespace

std::size_t rank_mod_p(const SparseExactMatrix& m, Prime p, const ModularOptions& options) {
  if (p < 3 || p >= (1U << 30) || !is_prime(p)) throw ArgumentError("rank_mod_p: need a prime below 2^30");
  const PrimeField field(p);
  ModularRows data = modular_rows(m, field, p);

  SparseEliminator sparse(data, field, options);
  const std::size_t sparse_rank = sparse.run();
  ModularRows rest = sparse.remainder();
  data.rows.clear();
  data.rows.shrink_to_fit();
  if (rest.width == 0 || rest.rows.empty()) return sparse_rank;

  std::vector<const SparseRow*> order;
  order.reserve(rest.rows.size());
  for (const auto& row : rest.rows) order.push_back(&row);
  if (options.shuffle_seed != 0) {
    std::mt19937_64 gen(options.shuffle_seed);
    std::shuffle(order.begin(), order.end(), gen);
  }

  DenseEliminator dense(rest.width, field);
  const std::size_t batch = std::max<std::size_t>(1, options.batch_rows);
  for (std::size_t start = 0; start < order.size() && !dense.full(); start += batch) {
    const std::size_t end = std::min(order.size(), start + batch);
    dense.add_batch(std::vector<const SparseRow*>(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                  order.begin() + static_cast<std::ptrdiff_t>(end)));
  }
  return sparse_rank + dense.rank();
}

// ================================================================== over Q

namespace {

struct IntegerForm {
  std::vector<std::vector<BigInt>> rows;
  std::vector<BigInt> column_scale;  // column j was multiplied by column_scale[j]
};

// Multiplies each column by the lcm of its denominators.
IntegerForm clear_denominators(const SparseExactMatrix& m, const ExactOptions& options) {
  const std::size_t cells = static_cast<std::size_t>(m.rows()) * m.cols();
  if (cells > options.max_cells)
    throw ResourceError("exact elimination: " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        " exceeds the cell limit " + std::to_string(options.max_cells));
  IntegerForm out;
  out.rows.assign(m.rows(), std::vector<BigInt>(m.cols()));
  out.column_scale.assign(m.cols(), 1);
  for (Index c = 0; c < m.cols(); ++c) {
    BigInt lcm = 1;
    for (ValueId id : m.column_values(c)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.value(id).get_den_mpz_t());
    out.column_scale[c] = lcm;
    auto rows = m.column_rows(c);
    auto ids = m.column_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Rational& v = m.value(ids[k]);
      out.rows[rows[k]][c] = v.get_num() * (lcm / v.get_den());
    }
  }
  return out;
}

struct Echelon {
  std::vector<std::vector<BigInt>> rows;  // first rank rows are the echelon form
  std::vector<std::size_t> pivot_cols;
};

// Fraction-free elimination. After step k every entry below the pivot rows
// is a (k+1)x(k+1) minor, so the division by the previous pivot is exact.
Echelon bareiss(std::vector<std::vector<BigInt>> a, std::size_t cols, const ExactOptions& options) {
  Echelon e;
  const std::size_t n = a.size();
  BigInt prev = 1;
  std::size_t r = 0;
  BigInt t1;
  BigInt t2;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t pivot = r;
    while (pivot < n && sgn(a[pivot][c]) == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[pivot], a[r]);
    const BigInt& p = a[r][c];
    for (std::size_t i = r + 1; i < n; ++i) {
      auto& row = a[i];
      const BigInt lead = row[c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_mul(t1.get_mpz_t(), p.get_mpz_t(), row[j].get_mpz_t());
        if (sgn(lead) != 0) {
          mpz_mul(t2.get_mpz_t(), lead.get_mpz_t(), a[r][j].get_mpz_t());
          mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        }
        mpz_divexact(row[j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
        if (mpz_sizeinbase(row[j].get_mpz_t(), 2) > options.max_bits)
          throw ResourceError("exact elimination: entry growth beyond " + std::to_string(options.max_bits) + " bits");
      }
      row[c] = 0;
    }
    prev = p;
    e.pivot_cols.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

}  // namespace

std::size_t rank_exact(const SparseExactMatrix& m, const ExactOptions& options) {
  // Rank is transpose invariant; eliminate along the shorter dimension.
  if (m.cols() > m.rows()) return rank_exact(m.transpose(), options);
  IntegerForm form = clear_denominators(m, options);
  return bareiss(std::move(form.rows), m.cols(), options).pivot_cols.size();
}

std::vector<std::vector<Rational>> kernel_basis_exact(const SparseExactMatrix& m, const ExactOptions& options) {
  IntegerForm form = clear_denominators(m, options);
  const std::size_t cols = m.cols();
  const Echelon e = bareiss(std::move(form.rows), cols, options);

  std::vector<char> is_pivot(cols, 0);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = 1;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> y(cols);
    y[free] = 1;
    for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
      const std::size_t pc = e.pivot_cols[k];
      Rational s = 0;
      for (std::size_t j = pc + 1; j < cols; ++j)
        if (sgn(y[j]) != 0 && sgn(e.rows[k][j]) != 0) s += Rational(e.rows[k][j]) * y[j];
      y[pc] = -s / Rational(e.rows[k][pc]);
    }
    // Undo the column scaling: m x = 0 exactly when the scaled matrix kills
    // y with x_j = scale_j y_j. Normalise so that x_free = 1.
    const Rational norm = Rational(form.column_scale[free]);
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(y[j]) != 0) y[j] = y[j] * Rational(form.column_scale[j]) / norm;
    basis.push_back(std::move(y));
  }
  return basis;
}

// =========================================================== certification

RankCertificate certify_injective(const SparseExactMatrix& m, const CertifyOptions& options) {
  RankCertificate cert;
  cert.cols = m.cols();
  std::size_t best = 0;
  for (Prime p : options.primes) {
    std::size_t r = 0;
    try {
      r = rank_mod_p(m, p, options.modular);
    } catch (const BadPrimeError&) {
      continue;
    }
    cert.primes.push_back(p);
    best = std::max(best, r);
    if (r == m.cols()) {
      cert.rank = r;
      cert.method = RankMethod::Modular;
      cert.injective = true;
      return cert;
    }
  }
  try {
    cert.rank = rank_exact(m, options.exact);
    cert.method = RankMethod::Exact;
    cert.injective = cert.rank == m.cols();
  } catch (const ResourceError&) {
    cert.rank = best;
    cert.method = RankMethod::Modular;
    cert.injective = false;
    cert.inconclusive = true;
  }
  return cert;
}

}  // namespace fh

#include "fh/sparse_matrix.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "fh/errors.hpp"

namespace fh {

SparseExactMatrix::SparseExactMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), col_start_(static_cast<std::size_t>(cols) + 1, 0) {}

SparseExactMatrix SparseExactMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& x, const Triplet& y) { return std::tie(x.col, x.row) < std::tie(y.col, y.row); });
  SparseMatrixBuilder builder(rows, cols);
  std::size_t k = 0;
  for (Index c = 0; c < cols; ++c) {
    std::vector<std::pair<Index, Rational>> column;
    for (; k < entries.size() && entries[k].col == c; ++k) {
      if (entries[k].row >= rows) throw ArgumentError("triplet row out of range");
      column.emplace_back(entries[k].row, entries[k].value);
    }
    builder.add_column(column);
  }
  if (k != entries.size()) throw ArgumentError("triplet column out of range");
  return std::move(builder).finish();
}

SparseExactMatrix SparseExactMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
  std::vector<Triplet> entries;
  for (Index i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ArgumentError("ragged dense matrix");
    for (Index j = 0; j < c; ++j)
      if (sgn(rows[i][j]) != 0) entries.push_back({i, j, rows[i][j]});
  }
  return from_triplets(r, c, std::move(entries));
}

SparseExactMatrix SparseExactMatrix::identity(Index n) {
  SparseMatrixBuilder builder(n, n);
  const ValueId one = builder.intern(Rational(1));
  for (Index c = 0; c < n; ++c) builder.add_column(std::vector<std::pair<Index, ValueId>>{{c, one}});
  return std::move(builder).finish();
}

Rational SparseExactMatrix::at(Index row, Index col) const {
  if (row >= rows_ || col >= cols_) throw ArgumentError("matrix index out of range");
  auto rows = column_rows(col);
  auto it = std::lower_bound(rows.begin(), rows.end(), row);
  if (it == rows.end() || *it != row) return 0;
  return values_[column_values(col)[static_cast<std::size_t>(it - rows.begin())]];
}

SparseVector SparseExactMatrix::column(Index col) const {
  SparseVector out;
  auto rows = column_rows(col);
  auto ids = column_values(col);
  out.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) out.emplace_back(rows[k], values_[ids[k]]);
  return out;
}

std::vector<Triplet> SparseExactMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (Index c = 0; c < cols_; ++c) {
    auto rows = column_rows(c);
    auto ids = column_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) out.push_back({rows[k], c, values_[ids[k]]});
  }
  return out;
}

std::vector<std::vector<Rational>> SparseExactMatrix::to_dense() const {
  std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
  for (Index c = 0; c < cols_; ++c) {
    auto rows = column_rows(c);
    auto ids = column_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) out[rows[k]][c] = values_[ids[k]];
  }
  return out;
}

std::optional<Rational> SparseExactMatrix::uniform_value() const {
  if (nnz() == 0) return std::nullopt;
  std::vector<char> used(values_.size(), 0);
  std::size_t distinct = 0;
  for (ValueId id : value_id_)
    if (!used[id]) {
      used[id] = 1;
      if (++distinct > 1) return std::nullopt;
    }
  return values_[value_id_.front()];
}

SparseExactMatrix SparseExactMatrix::transpose() const {
  SparseExactMatrix t(cols_, rows_);
  t.values_ = values_;
  std::vector<std::size_t> counts(static_cast<std::size_t>(rows_) + 1, 0);
  for (Index r : row_) ++counts[static_cast<std::size_t>(r) + 1];
  for (std::size_t r = 0; r < rows_; ++r) counts[r + 1] += counts[r];
  t.col_start_ = counts;
  t.row_.resize(nnz());
  t.value_id_.resize(nnz());
  for (Index c = 0; c < cols_; ++c) {
    auto rows = column_rows(c);
    auto ids = column_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const std::size_t slot = counts[rows[k]]++;
      t.row_[slot] = c;
      t.value_id_[slot] = ids[k];
    }
  }
  return t;
}

SparseExactMatrix SparseExactMatrix::multiply(const SparseExactMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ArgumentError("matrix product: inner dimensions differ");
  SparseMatrixBuilder builder(rows_, rhs.cols_);

  const auto lhs_uniform = uniform_value();
  const auto rhs_uniform = rhs.uniform_value();
  if (lhs_uniform && rhs_uniform) {
    // Both factors are a scalar times a 0/1 matrix: count paths in machine
    // integers and scale once.
    const Rational scale = *lhs_uniform * *rhs_uniform;
    std::vector<std::int64_t> dense(rows_, 0);
    std::vector<Index> touched;
    std::map<std::int64_t, ValueId> ids;
    for (Index c = 0; c < rhs.cols_; ++c) {
      for (Index mid : rhs.column_rows(c))
        for (Index r : column_rows(mid)) {
          if (dense[r] == 0) touched.push_back(r);
          ++dense[r];
        }
      std::vector<std::pair<Index, ValueId>> column;
      column.reserve(touched.size());
      for (Index r : touched) {
        const std::int64_t count = dense[r];
        auto it = ids.find(count);
        if (it == ids.end()) it = ids.emplace(count, builder.intern(scale * Rational(count))).first;
        column.emplace_back(r, it->second);
        dense[r] = 0;
      }
      touched.clear();
      builder.add_column(std::move(column));
    }
    return std::move(builder).finish();
  }

  SparseAccumulator acc(rows_);
  for (Index c = 0; c < rhs.cols_; ++c) {
    auto mids = rhs.column_rows(c);
    auto mid_ids = rhs.column_values(c);
    for (std::size_t k = 0; k < mids.size(); ++k) {
      const Rational& factor = rhs.values_[mid_ids[k]];
      auto rows = column_rows(mids[k]);
      auto ids = column_values(mids[k]);
      for (std::size_t t = 0; t < rows.size(); ++t) acc.add(rows[t], values_[ids[t]] * factor);
    }
    builder.add_column(acc.take());
  }
  return std::move(builder).finish();
}

SparseExactMatrix SparseExactMatrix::scaled(const Rational& factor) const {
  if (sgn(factor) == 0) return SparseExactMatrix(rows_, cols_);
  SparseExactMatrix out = *this;
  for (auto& v : out.values_) v *= factor;
  return out;
}

SparseExactMatrix SparseExactMatrix::select_rows(std::span<const Index> rows) const {
  std::vector<std::int64_t> position(rows_, -1);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= rows_) throw ArgumentError("select_rows: row out of range");
    position[rows[k]] = static_cast<std::int64_t>(k);
  }
  SparseMatrixBuilder builder(static_cast<Index>(rows.size()), cols_);
  std::vector<ValueId> remap(values_.size(), std::numeric_limits<ValueId>::max());
  for (Index c = 0; c < cols_; ++c) {
    std::vector<std::pair<Index, ValueId>> column;
    auto rs = column_rows(c);
    auto ids = column_values(c);
    for (std::size_t k = 0; k < rs.size(); ++k) {
      if (position[rs[k]] < 0) continue;
      ValueId& id = remap[ids[k]];
      if (id == std::numeric_limits<ValueId>::max()) id = builder.intern(values_[ids[k]]);
      column.emplace_back(static_cast<Index>(position[rs[k]]), id);
    }
    builder.add_column(std::move(column));
  }
  return std::move(builder).finish();
}

std::vector<Rational> SparseExactMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw ArgumentError("apply: vector length differs from column count");
  std::vector<Rational> out(rows_);
  for (Index c = 0; c < cols_; ++c) {
    if (sgn(v[c]) == 0) continue;
    auto rows = column_rows(c);
    auto ids = column_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) out[rows[k]] += values_[ids[k]] * v[c];
  }
  return out;
}

bool SparseExactMatrix::operator==(const SparseExactMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || col_start_ != other.col_start_ || row_ != other.row_)
    return false;
  std::map<std::pair<ValueId, ValueId>, bool> same;
  for (std::size_t k = 0; k < value_id_.size(); ++k) {
    const auto key = std::make_pair(value_id_[k], other.value_id_[k]);
    auto it = same.find(key);
    if (it == same.end()) it = same.emplace(key, values_[key.first] == other.values_[key.second]).first;
    if (!it->second) return false;
  }
  return true;
}

// ------------------------------------------------------------------ builder

SparseMatrixBuilder::SparseMatrixBuilder(Index rows, Index cols) {
  m_.rows_ = rows;
  m_.cols_ = cols;
  m_.col_start_.assign(1, 0);
  m_.col_start_.reserve(static_cast<std::size_t>(cols) + 1);
}

ValueId SparseMatrixBuilder::intern(const Rational& value) {
  if (sgn(value) == 0) throw ArgumentError("zero entries are not stored");
  auto it = lookup_.find(value);
  if (it != lookup_.end()) return it->second;
  const auto id = static_cast<ValueId>(m_.values_.size());
  m_.values_.push_back(value);
  lookup_.emplace(value, id);
  return id;
}

void SparseMatrixBuilder::reserve(std::size_t nnz) {
  m_.row_.reserve(nnz);
  m_.value_id_.reserve(nnz);
}

void SparseMatrixBuilder::add_column(std::vector<std::pair<Index, ValueId>> entries) {
  if (columns_added() >= m_.cols_) throw ArgumentError("too many columns added");
  std::sort(entries.begin(), entries.end());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].first >= m_.rows_) throw ArgumentError("row index out of range");
    if (k > 0 && entries[k].first == entries[k - 1].first) throw ArgumentError("duplicate row in column");
    if (entries[k].second >= m_.values_.size()) throw ArgumentError("unknown value id");
    m_.row_.push_back(entries[k].first);
    m_.value_id_.push_back(entries[k].second);
  }
  m_.col_start_.push_back(m_.row_.size());
}

void SparseMatrixBuilder::add_column(const std::vector<std::pair<Index, Rational>>& entries) {
  std::vector<std::pair<Index, Rational>> sorted = entries;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<Index, ValueId>> column;
  for (std::size_t k = 0; k < sorted.size();) {
    Rational sum = sorted[k].second;
    std::size_t t = k + 1;
    for (; t < sorted.size() && sorted[t].first == sorted[k].first; ++t) sum += sorted[t].second;
    if (sgn(sum) != 0) column.emplace_back(sorted[k].first, intern(sum));
    k = t;
  }
  add_column(std::move(column));
}

SparseExactMatrix SparseMatrixBuilder::finish() && {
  while (columns_added() < m_.cols_) m_.col_start_.push_back(m_.row_.size());
  return std::move(m_);
}

// -------------------------------------------------------------- accumulator

SparseAccumulator::SparseAccumulator(Index size) : dense_(size), touched_flag_(size, 0) {}

void SparseAccumulator::add(Index row, const Rational& v) {
  if (!touched_flag_[row]) {
    touched_flag_[row] = 1;
    touched_.push_back(row);
  }
  dense_[row] += v;
}

std::vector<std::pair<Index, Rational>> SparseAccumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  std::vector<std::pair<Index, Rational>> out;
  for (Index r : touched_) {
    if (sgn(dense_[r]) != 0) out.emplace_back(r, dense_[r]);
    dense_[r] = 0;
    touched_flag_[r] = 0;
  }
  touched_.clear();
  return out;
}

}  // namespace fh

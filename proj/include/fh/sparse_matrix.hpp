#pragma once

// Immutable sparse matrix over Q in compressed-column form. Entry values are
// dictionary encoded: each stored entry refers to one of a small table of
// distinct nonzero rationals. The operators this library builds have very
// few distinct entry values, so a matrix with millions of entries costs
// eight bytes per entry.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fh/bigint.hpp"

namespace fh {

using Index = std::uint32_t;
using ValueId = std::uint32_t;

struct Triplet {
  Index row;
  Index col;
  Rational value;
};

// Sorted by index, no zeros, no duplicates.
using SparseVector = std::vector<std::pair<Index, Rational>>;

class SparseMatrixBuilder;

class SparseExactMatrix {
 public:
  SparseExactMatrix() = default;
  SparseExactMatrix(Index rows, Index cols);

  // Duplicates are summed and zero sums dropped.
  static SparseExactMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> entries);
  static SparseExactMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static SparseExactMatrix identity(Index n);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return row_.size(); }

  std::span<const Index> column_rows(Index col) const {
    return {row_.data() + col_start_[col], row_.data() + col_start_[col + 1]};
  }
  std::span<const ValueId> column_values(Index col) const {
    return {value_id_.data() + col_start_[col], value_id_.data() + col_start_[col + 1]};
  }
  const Rational& value(ValueId id) const { return values_[id]; }
  std::span<const Rational> distinct_values() const noexcept { return values_; }

  Rational at(Index row, Index col) const;
  SparseVector column(Index col) const;
  // Sorted by (col, row).
  std::vector<Triplet> triplets() const;
  std::vector<std::vector<Rational>> to_dense() const;

  // Set when every stored entry has the same value.
  std::optional<Rational> uniform_value() const;

  SparseExactMatrix transpose() const;
  SparseExactMatrix multiply(const SparseExactMatrix& rhs) const;
  SparseExactMatrix scaled(const Rational& factor) const;
  SparseExactMatrix select_rows(std::span<const Index> rows) const;
  std::vector<Rational> apply(std::span<const Rational> v) const;

  // Value equality; the two value dictionaries may differ.
  bool operator==(const SparseExactMatrix& other) const;

 private:
  friend class SparseMatrixBuilder;

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<std::size_t> col_start_{0};
  std::vector<Index> row_;
  std::vector<ValueId> value_id_;
  std::vector<Rational> values_;
};

// Builds a matrix one column at a time, left to right.
class SparseMatrixBuilder {
 public:
  SparseMatrixBuilder(Index rows, Index cols);

  // Returns the dictionary id of a nonzero value.
  ValueId intern(const Rational& value);
  // Entries as (row, value id); rows must be distinct, any order.
  void add_column(std::vector<std::pair<Index, ValueId>> entries);
  // Duplicated rows are summed, zeros dropped.
  void add_column(const std::vector<std::pair<Index, Rational>>& entries);
  std::size_t columns_added() const noexcept { return m_.col_start_.size() - 1; }
  void reserve(std::size_t nnz);

  SparseExactMatrix finish() &&;

 private:
  SparseExactMatrix m_;
  std::map<Rational, ValueId> lookup_;
};

// Sparse accumulator for column-at-a-time products.
class SparseAccumulator {
 public:
  explicit SparseAccumulator(Index size);
  void add(Index row, const Rational& v);
  // Sorted nonzero entries; resets the accumulator.
  std::vector<std::pair<Index, Rational>> take();

 private:
  std::vector<Rational> dense_;
  std::vector<char> touched_flag_;
  std::vector<Index> touched_;
};

}  // namespace fh

#pragma once

// Partitions, set partitions into equal blocks, symmetric group characters
// and the dimension formulas shared by the rest of the library.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fh/bigint.hpp"

namespace fh {

// Weakly decreasing sequence of positive integers. Used both for irreducible
// representations and for cycle types of conjugacy classes.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  // Accepts "3,2,1", "(3,2,1)", "3 2 1" and the empty string.
  static Partition parse(std::string_view text);
  // Sorts the entries and drops zeros.
  static Partition from_unsorted(std::vector<int> entries);

  int size() const noexcept { return size_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }
  // parts[k], or 0 past the last part.
  int operator[](int k) const noexcept {
    return k < length() ? parts_[static_cast<std::size_t>(k)] : 0;
  }
  std::span<const int> parts() const noexcept { return parts_; }

  Partition conjugate() const;
  // Dominance order: every partial sum of *this is >= the matching one of other.
  bool dominates(const Partition& other) const;
  // Multiplicity m_k of part k.
  int multiplicity(int k) const;

  std::string to_string() const;

  bool operator==(const Partition& other) const { return parts_ == other.parts_; }
  std::strong_ordering operator<=>(const Partition& other) const { return parts_ <=> other.parts_; }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

// Entries may be in any order and may be zero.
using WeakComposition = std::vector<int>;

// Partition of the positions {0, ..., a*b-1} into a blocks of size b.
// Stored as one label per position; labels number the blocks in order of
// their smallest element, which makes the representation canonical.
class BlockSetPartition {
 public:
  BlockSetPartition() = default;
  // Blocks may be given in any order; each block must have the same size.
  explicit BlockSetPartition(std::vector<std::vector<int>> blocks);
  // Arbitrary block labels in [0, block_count); relabelled canonically.
  static BlockSetPartition from_labels(std::span<const int> labels);

  int block_count() const noexcept { return blocks_; }
  int block_size() const noexcept { return block_size_; }
  int ground_size() const noexcept { return static_cast<int>(labels_.size()); }
  int label(int position) const { return labels_[static_cast<std::size_t>(position)]; }
  std::span<const std::uint8_t> labels() const noexcept { return labels_; }
  std::vector<std::vector<int>> blocks() const;

  std::string to_string() const;

  bool operator==(const BlockSetPartition&) const = default;
  auto operator<=>(const BlockSetPartition&) const = default;

 private:
  std::vector<std::uint8_t> labels_;
  int blocks_ = 0;
  int block_size_ = 0;
};

// All partitions of n in reverse lexicographic order, (n) first and (1^n)
// last, optionally restricted to at most max_parts parts.
std::vector<Partition> partitions_of(int n, std::optional<int> max_parts = std::nullopt);

// z_mu = prod_k k^{m_k} m_k!
BigInt centralizer_order(const Partition& mu);
// n! / z_mu
BigInt class_size(const Partition& mu);

// chi^lambda(mu) by the Murnaghan-Nakayama rule. Intermediate values are
// memoised in a process-wide, mutex-guarded table.
BigInt character(const Partition& lambda, const Partition& mu);

struct CharacterTable {
  int n = 0;
  std::vector<Partition> partitions;        // partitions_of(n)
  std::vector<std::vector<BigInt>> values;  // values[lambda][mu]

  std::size_t index_of(const Partition& p) const;
  const BigInt& at(const Partition& lambda, const Partition& mu) const {
    return values[index_of(lambda)][index_of(mu)];
  }
};
CharacterTable character_table(int n);

// Number of semistandard tableaux of shape lambda and content mu.
BigInt kostka(const Partition& lambda, const WeakComposition& mu);

// f^lambda by the hook length formula.
BigInt dim_irrep_sym(const Partition& lambda);
// Dimension of the irreducible GL_n representation {lambda}; 0 when lambda
// has more than n parts.
BigInt dim_irrep_gl(const Partition& lambda, int n);

// (ab)! / ((b!)^a a!)
BigInt block_partition_count(int a, int b);

inline constexpr int kDefaultBlockLimit = 16;

// Every partition of {0..ab-1} into a blocks of size b, in lexicographic
// order of the label sequences. Throws ResourceError when ab > max_ground.
std::vector<BlockSetPartition> enumerate_block_partitions(int a, int b, int max_ground = kDefaultBlockLimit);

}  // namespace fh

#include "fh/combinatorics.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "fh/errors.hpp"

namespace fh {

BigInt factorial(int n) {
  if (n < 0) throw ArgumentError("factorial of a negative number");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::string to_fraction_string(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k] < 1) throw ArgumentError("partition parts must be positive");
    if (k > 0 && parts_[k] > parts_[k - 1]) throw ArgumentError("partition parts must be weakly decreasing");
    size_ += parts_[k];
  }
}

Partition Partition::from_unsorted(std::vector<int> entries) {
  std::erase(entries, 0);
  std::sort(entries.begin(), entries.end(), std::greater<>());
  return Partition(std::move(entries));
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == ' ') {
      ++pos;
      continue;
    }
    int value = 0;
    auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || end == text.data() + pos)
      throw ArgumentError("cannot parse partition '" + std::string(text) + "'");
    parts.push_back(value);
    pos = static_cast<std::size_t>(end - text.data());
  }
  return Partition(std::move(parts));
}

Partition Partition::conjugate() const {
  std::vector<int> conj(empty() ? 0 : static_cast<std::size_t>(parts_[0]), 0);
  for (int p : parts_)
    for (int j = 0; j < p; ++j) ++conj[static_cast<std::size_t>(j)];
  return Partition(std::move(conj));
}

bool Partition::dominates(const Partition& other) const {
  int mine = 0;
  int theirs = 0;
  const int len = std::max(length(), other.length());
  for (int k = 0; k < len; ++k) {
    mine += (*this)[k];
    theirs += other[k];
    if (mine < theirs) return false;
  }
  return true;
}

int Partition::multiplicity(int k) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(parts_[k]);
  }
  return s + ")";
}

// -------------------------------------------------------- BlockSetPartition

BlockSetPartition BlockSetPartition::from_labels(std::span<const int> labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<int> relabel;
  BlockSetPartition p;
  p.labels_.resize(labels.size());
  std::vector<int> sizes;
  for (int pos = 0; pos < n; ++pos) {
    const int l = labels[static_cast<std::size_t>(pos)];
    if (l < 0) throw ArgumentError("negative block label");
    if (static_cast<std::size_t>(l) >= relabel.size()) relabel.resize(static_cast<std::size_t>(l) + 1, -1);
    int& target = relabel[static_cast<std::size_t>(l)];
    if (target < 0) {
      target = static_cast<int>(sizes.size());
      sizes.push_back(0);
    }
    ++sizes[static_cast<std::size_t>(target)];
    p.labels_[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(target);
  }
  if (sizes.size() > 255) throw ArgumentError("too many blocks");
  for (int s : sizes)
    if (s != sizes.front()) throw ArgumentError("blocks must all have the same size");
  p.blocks_ = static_cast<int>(sizes.size());
  p.block_size_ = sizes.empty() ? 0 : sizes.front();
  return p;
}

BlockSetPartition::BlockSetPartition(std::vector<std::vector<int>> blocks) {
  int n = 0;
  for (const auto& block : blocks) n += static_cast<int>(block.size());
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].empty()) throw ArgumentError("empty block");
    for (int pos : blocks[k]) {
      if (pos < 0 || pos >= n) throw ArgumentError("block element out of range");
      if (labels[static_cast<std::size_t>(pos)] >= 0) throw ArgumentError("blocks are not disjoint");
      labels[static_cast<std::size_t>(pos)] = static_cast<int>(k);
    }
  }
  *this = from_labels(labels);
}

std::vector<std::vector<int>> BlockSetPartition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks_));
  for (int pos = 0; pos < ground_size(); ++pos) out[labels_[static_cast<std::size_t>(pos)]].push_back(pos);
  return out;
}

std::string BlockSetPartition::to_string() const {
  std::string s;
  for (const auto& block : blocks()) {
    s += '{';
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(block[k]);
    }
    s += '}';
  }
  return s;
}

// --------------------------------------------------------------- partitions

namespace {

void partitions_rec(int remaining, int max_part, int parts_left, std::vector<int>& prefix,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (parts_left == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partitions_rec(remaining - p, p, parts_left - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n, std::optional<int> max_parts) {
  if (n < 0) throw ArgumentError("partitions_of: n must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> prefix;
  partitions_rec(n, n, max_parts.value_or(n), prefix, out);
  return out;
}

BigInt centralizer_order(const Partition& mu) {
  BigInt z = 1;
  std::map<int, int> mult;
  for (int p : mu.parts()) ++mult[p];
  for (auto [part, m] : mult) {
    BigInt pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(part), static_cast<unsigned long>(m));
    z *= pk * factorial(m);
  }
  return z;
}

BigInt class_size(const Partition& mu) { return factorial(mu.size()) / centralizer_order(mu); }

// ------------------------------------------------------ Murnaghan-Nakayama

namespace {

std::string memo_key(const std::vector<int>& lambda, std::span<const int> mu) {
  std::string key;
  key.reserve(lambda.size() + mu.size() + 1);
  for (int p : lambda) key.push_back(static_cast<char>(p));
  key.push_back('\xff');
  for (int p : mu) key.push_back(static_cast<char>(p));
  return key;
}

struct CharacterMemo {
  std::mutex mutex;
  std::unordered_map<std::string, BigInt> table;
};

CharacterMemo& character_memo() {
  static CharacterMemo memo;
  return memo;
}

// Removes rim hooks of length mu[0], mu[1], ... in turn. A rim hook of length
// k corresponds to moving one bead of the beta-set down by k onto a free
// position; its height is the number of beads jumped over.
BigInt murnaghan_nakayama(const std::vector<int>& lambda, std::span<const int> mu) {
  if (mu.empty()) return lambda.empty() ? 1 : 0;

  const std::string key = memo_key(lambda, mu);
  auto& memo = character_memo();
  {
    std::lock_guard lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
  }

  const int k = mu.front();
  const auto rest = mu.subspan(1);
  const int len = static_cast<int>(lambda.size());
  std::vector<int> beta(lambda.size());
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (len - 1 - i);

  BigInt total = 0;
  for (int idx = 0; idx < len; ++idx) {
    const int x = beta[static_cast<std::size_t>(idx)];
    const int y = x - k;
    if (y < 0 || std::find(beta.begin(), beta.end(), y) != beta.end()) continue;
    int jumped = 0;
    for (int z : beta)
      if (z > y && z < x) ++jumped;
    std::vector<int> moved = beta;
    moved[static_cast<std::size_t>(idx)] = y;
    std::sort(moved.begin(), moved.end(), std::greater<>());
    std::vector<int> smaller;
    for (int i = 0; i < len; ++i) {
      const int part = moved[static_cast<std::size_t>(i)] - (len - 1 - i);
      if (part > 0) smaller.push_back(part);
    }
    BigInt term = murnaghan_nakayama(smaller, rest);
    if (jumped % 2) total -= term;
    else total += term;
  }

  std::lock_guard lock(memo.mutex);
  memo.table.emplace(key, total);
  return total;
}

}  // namespace

BigInt character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw ArgumentError("character: |lambda| != |mu|");
  std::vector<int> parts(lambda.parts().begin(), lambda.parts().end());
  return murnaghan_nakayama(parts, mu.parts());
}

std::size_t CharacterTable::index_of(const Partition& p) const {
  // partitions are in reverse lexicographic order
  auto it = std::lower_bound(partitions.begin(), partitions.end(), p, std::greater<>());
  if (it == partitions.end() || *it != p) throw ArgumentError("partition " + p.to_string() + " not in table");
  return static_cast<std::size_t>(it - partitions.begin());
}

CharacterTable character_table(int n) {
  CharacterTable table;
  table.n = n;
  table.partitions = partitions_of(n);
  table.values.reserve(table.partitions.size());
  for (const auto& lambda : table.partitions) {
    auto& row = table.values.emplace_back();
    row.reserve(table.partitions.size());
    for (const auto& mu : table.partitions) row.push_back(character(lambda, mu));
  }
  return table;
}

// ------------------------------------------------------------------ Kostka

namespace {

// Adds a horizontal strip of `cells` boxes to `shape` inside `bound`,
// calling emit for every resulting shape.
void horizontal_strips(const std::vector<int>& shape, const Partition& bound, std::size_t row, int cells,
                       std::vector<int>& next, const std::function<void(const std::vector<int>&)>& emit) {
  if (row == next.size()) {
    if (cells == 0) emit(next);
    return;
  }
  const int lo = shape[row];
  const int hi = std::min(bound[static_cast<int>(row)], row == 0 ? bound[0] : shape[row - 1]);
  for (int v = lo; v <= hi && v - lo <= cells; ++v) {
    next[row] = v;
    horizontal_strips(shape, bound, row + 1, cells - (v - lo), next, emit);
  }
  next[row] = lo;
}

}  // namespace

BigInt kostka(const Partition& lambda, const WeakComposition& mu) {
  int total = 0;
  for (int m : mu) {
    if (m < 0) throw ArgumentError("kostka: negative content entry");
    total += m;
  }
  if (total != lambda.size()) throw ArgumentError("kostka: |lambda| != |mu|");

  const std::size_t rows = static_cast<std::size_t>(lambda.length());
  std::map<std::vector<int>, BigInt> layer;
  layer.emplace(std::vector<int>(rows, 0), 1);
  for (int m : mu) {
    std::map<std::vector<int>, BigInt> grown;
    for (const auto& [shape, count] : layer) {
      std::vector<int> next = shape;
      horizontal_strips(shape, lambda, 0, m, next,
                        [&](const std::vector<int>& s) { grown[s] += count; });
    }
    layer = std::move(grown);
  }
  std::vector<int> full(lambda.parts().begin(), lambda.parts().end());
  auto it = layer.find(full);
  return it == layer.end() ? BigInt(0) : it->second;
}

BigInt dim_irrep_sym(const Partition& lambda) {
  const Partition conj = lambda.conjugate();
  BigInt hooks = 1;
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[i]; ++j) hooks *= (lambda[i] - j) + (conj[j] - i) - 1;
  return factorial(lambda.size()) / hooks;
}

BigInt dim_irrep_gl(const Partition& lambda, int n) {
  if (n < 1) throw ArgumentError("dim_irrep_gl: n must be positive");
  if (lambda.length() > n) return 0;
  const Partition conj = lambda.conjugate();
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[i]; ++j) {
      num *= n + j - i;
      den *= (lambda[i] - j) + (conj[j] - i) - 1;
    }
  return num / den;
}

// --------------------------------------------------------- block partitions

BigInt block_partition_count(int a, int b) {
  if (a < 0 || b < 0) throw ArgumentError("block_partition_count: negative argument");
  BigInt bf = factorial(b);
  BigInt denom;
  mpz_pow_ui(denom.get_mpz_t(), bf.get_mpz_t(), static_cast<unsigned long>(a));
  denom *= factorial(a);
  return factorial(a * b) / denom;
}

namespace {

struct BlockEnumerator {
  int n;
  int b;
  std::vector<int> labels;
  std::vector<BlockSetPartition>& out;

  void next_block(int label) {
    int first = 0;
    while (first < n && labels[static_cast<std::size_t>(first)] >= 0) ++first;
    if (first == n) {
      out.push_back(BlockSetPartition::from_labels(labels));
      return;
    }
    labels[static_cast<std::size_t>(first)] = label;
    fill(label, first + 1, b - 1);
    labels[static_cast<std::size_t>(first)] = -1;
  }

  void fill(int label, int from, int needed) {
    if (needed == 0) {
      next_block(label + 1);
      return;
    }
    for (int pos = from; pos < n; ++pos) {
      if (labels[static_cast<std::size_t>(pos)] >= 0) continue;
      labels[static_cast<std::size_t>(pos)] = label;
      fill(label, pos + 1, needed - 1);
      labels[static_cast<std::size_t>(pos)] = -1;
    }
  }
};

}  // namespace

std::vector<BlockSetPartition> enumerate_block_partitions(int a, int b, int max_ground) {
  if (a < 1 || b < 1) throw ArgumentError("enumerate_block_partitions: a and b must be positive");
  if (a * b > max_ground)
    throw ResourceError("enumerate_block_partitions: ab = " + std::to_string(a * b) + " exceeds limit " +
                        std::to_string(max_ground));
  std::vector<BlockSetPartition> out;
  out.reserve(block_partition_count(a, b).get_ui());
  BlockEnumerator e{a * b, b, std::vector<int>(static_cast<std::size_t>(a * b), -1), out};
  e.next_block(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fh

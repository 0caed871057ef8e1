#pragma once

// Brute-force reference computations used only by the tests. They share no
// code with the library beyond the GMP number types.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "fh/bigint.hpp"

namespace oracle {

using fh::BigInt;
using fh::Rational;
using Shape = std::vector<int>;
using Dense = std::vector<std::vector<Rational>>;

inline long partition_count(int n, int largest) {
  if (n == 0) return 1;
  long total = 0;
  for (int k = std::min(n, largest); k >= 1; --k) total += partition_count(n - k, k);
  return total;
}

// Standard tableaux: remove a corner box in every possible way.
inline BigInt syt_count(Shape shape) {
  while (!shape.empty() && shape.back() == 0) shape.pop_back();
  if (shape.empty()) return 1;
  BigInt total = 0;
  for (std::size_t r = 0; r < shape.size(); ++r) {
    if (r + 1 < shape.size() && shape[r + 1] == shape[r]) continue;
    Shape smaller = shape;
    --smaller[r];
    total += syt_count(smaller);
  }
  return total;
}

// Semistandard tableaux of the given shape and content: a chain of shapes
// growing by horizontal strips of sizes content[0], content[1], ...
inline BigInt ssyt_count(const Shape& shape, const std::vector<int>& content) {
  std::function<BigInt(Shape, std::size_t)> grow = [&](Shape current, std::size_t step) -> BigInt {
    if (step == content.size()) {
      Shape a = current, b = shape;
      while (!a.empty() && a.back() == 0) a.pop_back();
      while (!b.empty() && b.back() == 0) b.pop_back();
      return a == b ? 1 : 0;
    }
    BigInt total = 0;
    current.resize(shape.size() + 1, 0);
    // Row r may grow up to min(shape[r], previous length of row r-1).
    std::function<void(std::size_t, int, Shape&)> place = [&](std::size_t r, int left, Shape& next) {
      if (r == shape.size()) {
        if (left == 0) total += grow(next, step + 1);
        return;
      }
      const int cap = std::min(shape[r], r == 0 ? shape[0] : current[r - 1]);
      for (int add = 0; current[r] + add <= cap && add <= left; ++add) {
        next[r] = current[r] + add;
        place(r + 1, left - add, next);
      }
      next[r] = current[r];
    };
    Shape next = current;
    place(0, content[step], next);
    return total;
  };
  if (std::accumulate(content.begin(), content.end(), 0) != std::accumulate(shape.begin(), shape.end(), 0)) return 0;
  return grow(Shape(shape.size(), 0), 0);
}

// Dimension of {lambda} for GL_n: tableaux with entries at most n.
inline BigInt gl_dimension(const Shape& shape, int n) {
  const int size = std::accumulate(shape.begin(), shape.end(), 0);
  BigInt total = 0;
  std::vector<int> content(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      content[static_cast<std::size_t>(pos)] = left;
      total += ssyt_count(shape, content);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      content[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, size);
  return total;
}

inline std::size_t rank(Dense m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline Dense multiply(const Dense& x, const Dense& y) {
  Dense out(x.size(), std::vector<Rational>(y.empty() ? 0 : y[0].size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < y.size(); ++k)
      if (sgn(x[i][k]) != 0)
        for (std::size_t j = 0; j < y[k].size(); ++j) out[i][j] += x[i][k] * y[k][j];
  return out;
}

// Letters: E_i is +i, F_j is -j.
using Letters = std::vector<int>;
using Vector = std::map<Letters, Rational>;

// Replace one E_i by F_j in every possible slot, weight 1/length.
inline Vector raise(const Vector& v, int i, int j) {
  Vector out;
  for (const auto& [word, c] : v) {
    const Rational share = c / static_cast<long>(word.size());
    for (std::size_t p = 0; p < word.size(); ++p)
      if (word[p] == i) {
        Letters w = word;
        w[p] = -j;
        out[w] += share;
      }
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Label sequences of length parts*size, each label 0..parts-1 used size times
// and first used in increasing order, lexicographically sorted.
inline std::vector<std::vector<int>> canonical_labellings(int parts, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> labels;
  std::vector<int> used(static_cast<std::size_t>(parts), 0);
  std::function<void(int)> rec = [&](int opened) {
    if (static_cast<int>(labels.size()) == parts * size) {
      out.push_back(labels);
      return;
    }
    for (int l = 0; l < std::min(opened + 1, parts); ++l) {
      if (used[static_cast<std::size_t>(l)] == size) continue;
      ++used[static_cast<std::size_t>(l)];
      labels.push_back(l);
      rec(std::max(opened, l + 1));
      labels.pop_back();
      --used[static_cast<std::size_t>(l)];
    }
  };
  rec(0);
  return out;
}

// psi_{a x b} from its definition on words: the orbit sum of each E-labelling
// is pushed through phi_{a,b} first and phi_{1,1} last, then read off at
// one word of each F-orbit.
inline Dense psi(int a, int b) {
  const auto domain = canonical_labellings(a, b);
  const auto codomain = canonical_labellings(b, a);
  Dense out(codomain.size(), std::vector<Rational>(domain.size()));
  for (std::size_t col = 0; col < domain.size(); ++col) {
    Vector v;
    std::vector<int> sigma(static_cast<std::size_t>(a));
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      Letters w;
      for (int l : domain[col]) w.push_back(sigma[static_cast<std::size_t>(l)] + 1);
      v[w] = 1;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    for (int i = a; i >= 1; --i)
      for (int j = b; j >= 1; --j) v = raise(v, i, j);
    for (std::size_t row = 0; row < codomain.size(); ++row) {
      Letters w;
      for (int l : codomain[row]) w.push_back(-(l + 1));
      auto it = v.find(w);
      if (it != v.end()) out[row][col] = it->second;
    }
  }
  return out;
}

}  // namespace oracle

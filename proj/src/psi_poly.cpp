#include <algorithm>
#include <map>

#include "fh/errors.hpp"
#include "fh/foulkes_map.hpp"

namespace fh {

MonomialMultisetBasis::MonomialMultisetBasis(int count, int degree, int n,
                                             std::vector<std::vector<std::uint64_t>> elements)
    : count_(count), degree_(degree), n_(n), elements_(std::move(elements)) {}

std::optional<Index> MonomialMultisetBasis::index_of(const std::vector<std::uint64_t>& element) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), element);
  if (it == elements_.end() || *it != element) return std::nullopt;
  return static_cast<Index>(it - elements_.begin());
}

namespace {

void monomials_rec(int remaining, int smallest, int n, std::uint64_t prefix, std::vector<std::uint64_t>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (int v = smallest; v < n; ++v) monomials_rec(remaining - 1, v, n, (prefix << 4) | static_cast<std::uint64_t>(v), out);
}

void multisets_rec(int remaining, std::size_t smallest, const std::vector<std::uint64_t>& items,
                   std::vector<std::uint64_t>& prefix, std::vector<std::vector<std::uint64_t>>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t k = smallest; k < items.size(); ++k) {
    prefix.push_back(items[k]);
    multisets_rec(remaining - 1, k, items, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::uint8_t> variables_of(std::uint64_t monomial, int degree) {
  std::vector<std::uint8_t> vars(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k)
    vars[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((monomial >> (4 * (degree - 1 - k))) & 0xF);
  return vars;
}

}  // namespace

std::vector<std::uint64_t> monomials(int degree, int n) {
  if (degree < 0 || degree > 16 || n < 1 || n > 16) throw ArgumentError("monomials: need 0 <= degree <= 16, 1 <= n <= 16");
  std::vector<std::uint64_t> out;
  monomials_rec(degree, 0, n, 0, out);
  return out;
}

MonomialMultisetBasis monomial_multiset_basis(int count, int degree, int n, std::size_t limit) {
  if (count < 0) throw ArgumentError("monomial_multiset_basis: negative count");
  const std::vector<std::uint64_t> items = monomials(degree, n);
  const BigInt size = binomial(static_cast<int>(items.size()) + count - 1, count);
  if (size > BigInt(static_cast<unsigned long>(limit)))
    throw ResourceError("monomial multiset basis of size " + to_string(size) + " exceeds the limit " +
                        std::to_string(limit));
  std::vector<std::vector<std::uint64_t>> elements;
  std::vector<std::uint64_t> prefix;
  multisets_rec(count, 0, items, prefix, elements);
  return MonomialMultisetBasis(count, degree, n, std::move(elements));
}

SparseExactMatrix psi_poly(int a, int b, int n, std::size_t limit) {
  if (a < 1 || b < 1 || n < 1) throw ArgumentError("psi_poly: a, b and n must be positive");
  if (a > 16 || b > 16) throw ResourceError("psi_poly: degrees above 16 are not supported");
  const MonomialMultisetBasis domain = monomial_multiset_basis(a, b, n, limit);
  const MonomialMultisetBasis codomain = monomial_multiset_basis(b, a, n, limit);

  SparseMatrixBuilder builder(static_cast<Index>(codomain.size()), static_cast<Index>(domain.size()));
  std::map<std::int64_t, ValueId> ids;
  std::vector<std::uint8_t> column_vars(static_cast<std::size_t>(a));
  std::vector<std::uint64_t> image(static_cast<std::size_t>(b));

  for (Index col = 0; col < domain.size(); ++col) {
    // Distinct orderings of each monomial as a sequence of b variables.
    std::vector<std::vector<std::vector<std::uint8_t>>> orderings;
    for (std::uint64_t m : domain.element(col)) {
      std::vector<std::uint8_t> vars = variables_of(m, b);
      std::vector<std::vector<std::uint8_t>> list;
      do list.push_back(vars);
      while (std::next_permutation(vars.begin(), vars.end()));
      orderings.push_back(std::move(list));
    }
    std::map<Index, std::int64_t> counts;
    std::vector<std::size_t> choice(static_cast<std::size_t>(a), 0);
    while (true) {
      for (int j = 0; j < b; ++j) {
        for (int k = 0; k < a; ++k)
          column_vars[static_cast<std::size_t>(k)] =
              orderings[static_cast<std::size_t>(k)][choice[static_cast<std::size_t>(k)]][static_cast<std::size_t>(j)];
        std::sort(column_vars.begin(), column_vars.end());
        std::uint64_t product = 0;
        for (std::uint8_t v : column_vars) product = (product << 4) | v;
        image[static_cast<std::size_t>(j)] = product;
      }
      std::vector<std::uint64_t> key = image;
      std::sort(key.begin(), key.end());
      const auto row = codomain.index_of(key);
      if (!row) throw ConsistencyError("psi_poly: image outside the codomain basis");
      ++counts[*row];
      int k = a - 1;
      while (k >= 0 && ++choice[static_cast<std::size_t>(k)] == orderings[static_cast<std::size_t>(k)].size())
        choice[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
    std::vector<std::pair<Index, ValueId>> column;
    for (const auto& [row, count] : counts) {
      auto it = ids.find(count);
      if (it == ids.end()) it = ids.emplace(count, builder.intern(Rational(count))).first;
      column.emplace_back(row, it->second);
    }
    builder.add_column(std::move(column));
  }
  return std::move(builder).finish();
}

}  // namespace fh

#include "fh/tensorspace.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <numeric>

#include "fh/errors.hpp"

namespace fh {

Alphabet::Alphabet(int a_, int b_) : a(a_), b(b_) {
  if (a < 0 || b < 0 || a + b < 1 || a + b > kMaxLetters)
    throw ArgumentError("alphabet needs 1 to 16 letters");
}

Code Alphabet::code(Letter letter) const {
  if (letter.kind == LetterKind::E) {
    if (letter.index < 1 || letter.index > a) throw ArgumentError("E index out of range");
    return static_cast<Code>(letter.index - 1);
  }
  if (letter.index < 1 || letter.index > b) throw ArgumentError("F index out of range");
  return static_cast<Code>(a + letter.index - 1);
}

Letter Alphabet::letter(Code c) const {
  if (c < a) return {LetterKind::E, c + 1};
  if (c < a + b) return {LetterKind::F, c - a + 1};
  throw ArgumentError("letter code out of range");
}

int Content::length() const {
  return std::accumulate(alpha.begin(), alpha.end(), 0) + std::accumulate(beta.begin(), beta.end(), 0);
}

WordKey pack_word(std::span<const Code> codes) {
  if (codes.size() > kMaxWordLength) throw ArgumentError("word longer than 16 letters");
  WordKey key = 0;
  for (Code c : codes) key = (key << 4) | c;
  return key;
}

std::vector<Code> unpack_word(WordKey key, int length) {
  std::vector<Code> codes(static_cast<std::size_t>(length));
  for (int p = 0; p < length; ++p) codes[static_cast<std::size_t>(p)] = code_at(key, length, p);
  return codes;
}

// -------------------------------------------------------------------- Word

Word::Word(Alphabet alphabet, std::vector<Letter> letters) : alphabet_(alphabet) {
  if (letters.size() > kMaxWordLength) throw ArgumentError("word longer than 16 letters");
  codes_.reserve(letters.size());
  for (const Letter& l : letters) codes_.push_back(alphabet_.code(l));
}

Word Word::from_codes(Alphabet alphabet, std::vector<Code> codes) {
  std::vector<Letter> letters;
  letters.reserve(codes.size());
  for (Code c : codes) letters.push_back(alphabet.letter(c));
  return Word(alphabet, std::move(letters));
}

Word Word::from_key(Alphabet alphabet, WordKey key, int length) {
  return from_codes(alphabet, unpack_word(key, length));
}

Word Word::parse(Alphabet alphabet, std::string_view text) {
  std::vector<Letter> letters;
  std::size_t k = 0;
  while (k < text.size()) {
    const char ch = text[k++];
    if (ch == ' ') continue;
    if (ch == 'e' || ch == 'f') {
      letters.push_back({ch == 'e' ? LetterKind::E : LetterKind::F, 1});
      continue;
    }
    if (ch != 'E' && ch != 'F') throw ArgumentError("word: unexpected character '" + std::string(1, ch) + "'");
    int index = 0;
    const std::size_t start = k;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) index = index * 10 + (text[k++] - '0');
    if (k == start) throw ArgumentError("word: letter without index");
    letters.push_back({ch == 'E' ? LetterKind::E : LetterKind::F, index});
  }
  return Word(alphabet, std::move(letters));
}

Content Word::content() const { return content_of(alphabet_, key(), length()); }

std::string Word::to_string() const { return word_to_string(alphabet_, key(), length()); }

Content content_of(Alphabet alphabet, WordKey key, int length) {
  Content c{WeakComposition(static_cast<std::size_t>(alphabet.a), 0),
            WeakComposition(static_cast<std::size_t>(alphabet.b), 0)};
  for (int p = 0; p < length; ++p) {
    const Code code = code_at(key, length, p);
    if (code < alphabet.a) ++c.alpha[code];
    else if (code < alphabet.size()) ++c.beta[static_cast<std::size_t>(code - alphabet.a)];
    else throw ArgumentError("letter code out of range");
  }
  return c;
}

std::string word_to_string(Alphabet alphabet, WordKey key, int length) {
  std::string out;
  for (int p = 0; p < length; ++p) {
    const Letter l = alphabet.letter(code_at(key, length, p));
    out += l.kind == LetterKind::E ? 'E' : 'F';
    out += std::to_string(l.index);
  }
  return out;
}

// ------------------------------------------------------------- WeightBasis

WeightBasis::WeightBasis(Alphabet alphabet, int length, Content content, std::vector<WordKey> words)
    : alphabet_(alphabet), length_(length), content_(std::move(content)), words_(std::move(words)) {}

std::optional<Index> WeightBasis::index_of(WordKey key) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), key);
  if (it == words_.end() || *it != key) return std::nullopt;
  return static_cast<Index>(it - words_.begin());
}

namespace {

bool has_negative(const Content& c) {
  return std::any_of(c.alpha.begin(), c.alpha.end(), [](int x) { return x < 0; }) ||
         std::any_of(c.beta.begin(), c.beta.end(), [](int x) { return x < 0; });
}

std::vector<Code> sorted_codes(const Content& content) {
  std::vector<Code> codes;
  const int a = static_cast<int>(content.alpha.size());
  for (int i = 0; i < a; ++i) codes.insert(codes.end(), static_cast<std::size_t>(content.alpha[static_cast<std::size_t>(i)]), static_cast<Code>(i));
  for (std::size_t j = 0; j < content.beta.size(); ++j)
    codes.insert(codes.end(), static_cast<std::size_t>(content.beta[j]), static_cast<Code>(a + static_cast<int>(j)));
  return codes;
}

// Every distinct arrangement of the multiset, in lexicographic order.
std::vector<WordKey> arrangements(std::vector<Code> codes) {
  std::vector<WordKey> out;
  std::sort(codes.begin(), codes.end());
  do out.push_back(pack_word(codes));
  while (std::next_permutation(codes.begin(), codes.end()));
  return out;
}

}  // namespace

BigInt weight_space_dimension(const Content& content) {
  if (has_negative(content)) return 0;
  BigInt result = factorial(content.length());
  for (int x : content.alpha) result /= factorial(x);
  for (int x : content.beta) result /= factorial(x);
  return result;
}

WeightBasis weight_basis(int length, const WeakComposition& alpha, const WeakComposition& beta, std::size_t limit) {
  const Alphabet alphabet(static_cast<int>(alpha.size()), static_cast<int>(beta.size()));
  Content content{alpha, beta};
  if (has_negative(content)) throw ArgumentError("weight basis: negative content entry");
  if (content.length() != length) throw ArgumentError("weight basis: |alpha| + |beta| differs from the length");
  if (length > kMaxWordLength) throw ResourceError("weight basis: words longer than 16 letters");
  if (weight_space_dimension(content) > BigInt(static_cast<unsigned long>(limit)))
    throw ResourceError("weight basis: dimension " + to_string(weight_space_dimension(content)) +
                        " exceeds the limit " + std::to_string(limit));
  return WeightBasis(alphabet, length, content, arrangements(sorted_codes(content)));
}

// ----------------------------------------------------------------- raising

RaisingMap phi(int i, int j, const WeightBasis& basis) {
  const Alphabet& alphabet = basis.alphabet();
  if (i < 1 || i > alphabet.a || j < 1 || j > alphabet.b) throw ArgumentError("phi: operator index out of range");
  Content target = basis.content();
  --target.alpha[static_cast<std::size_t>(i - 1)];
  ++target.beta[static_cast<std::size_t>(j - 1)];

  if (has_negative(target) || has_negative(basis.content())) {
    RaisingMap out;
    out.matrix = SparseExactMatrix(0, static_cast<Index>(basis.size()));
    out.target = WeightBasis(alphabet, basis.length(), target, {});
    out.vanishes = true;
    return out;
  }

  RaisingMap out;
  out.target = weight_basis(basis.length(), target.alpha, target.beta);
  const Code from = alphabet.e(i);
  const Code to = alphabet.f(j);
  const int d = basis.length();
  SparseMatrixBuilder builder(static_cast<Index>(out.target.size()), static_cast<Index>(basis.size()));
  builder.reserve(basis.size() * static_cast<std::size_t>(basis.content().alpha[static_cast<std::size_t>(i - 1)]));
  const ValueId weight = builder.intern(Rational(1, d));
  for (WordKey w : basis.words()) {
    std::vector<std::pair<Index, ValueId>> column;
    for (int p = 0; p < d; ++p) {
      if (code_at(w, d, p) != from) continue;
      const auto row = out.target.index_of(with_code(w, d, p, to));
      if (!row) throw ConsistencyError("phi: raised word missing from the target basis");
      column.emplace_back(*row, weight);
    }
    builder.add_column(std::move(column));
  }
  out.matrix = std::move(builder).finish();
  return out;
}

void WordCombination::normalise() {
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t k = 0; k < terms.size();) {
    std::int64_t total = 0;
    std::size_t t = k;
    for (; t < terms.size() && terms[t].first == terms[k].first; ++t)
      if (__builtin_add_overflow(total, terms[t].second, &total))
        throw ResourceError("word combination: multiplicity overflows 64 bits");
    if (total != 0) terms[out++] = {terms[k].first, total};
    k = t;
  }
  terms.resize(out);
}

namespace {

// Bit 4q is set when nibble q of key equals code, for the low `length` nibbles.
std::uint64_t nibbles_equal(WordKey key, int length, Code code) {
  constexpr std::uint64_t kOnes = 0x1111111111111111ULL;
  const std::uint64_t low = length >= 16 ? kOnes : kOnes & ((std::uint64_t{1} << (4 * length)) - 1);
  const std::uint64_t diff = key ^ (kOnes * code);
  const std::uint64_t any = (diff | (diff >> 1) | (diff >> 2) | (diff >> 3)) & kOnes;
  return ~any & low;
}

}  // namespace

WordCombination raise_combination(const WordCombination& in, Code from, Code to) {
  WordCombination out;
  out.length = in.length;
  out.terms.reserve(in.terms.size() * 2);
  const std::uint64_t flip = static_cast<std::uint64_t>(from ^ to);
  for (const auto& [key, count] : in.terms)
    for (std::uint64_t hits = nibbles_equal(key, in.length, from); hits; hits &= hits - 1)
      out.terms.emplace_back(key ^ (flip << std::countr_zero(hits)), count);
  return out;
}

// ---------------------------------------------------------------- S_a action

WordKey sa_act(Alphabet alphabet, std::span<const int> pi, WordKey key, int length) {
  if (static_cast<int>(pi.size()) != alphabet.a) throw ArgumentError("sa_act: permutation has the wrong size");
  WordKey out = key;
  for (int p = 0; p < length; ++p) {
    const Code c = code_at(key, length, p);
    if (c < alphabet.a) out = with_code(out, length, p, static_cast<Code>(pi[c]));
  }
  return out;
}

Word sa_act(std::span<const int> pi, const Word& w) {
  std::vector<int> check(pi.begin(), pi.end());
  std::sort(check.begin(), check.end());
  for (std::size_t k = 0; k < check.size(); ++k)
    if (check[k] != static_cast<int>(k)) throw ArgumentError("sa_act: not a permutation of {0..a-1}");
  return Word::from_key(w.alphabet(), sa_act(w.alphabet(), pi, w.key(), w.length()), w.length());
}

WordKey canonical_in_orbit(WordKey key, int length, LetterRange range) {
  std::array<Code, kMaxLetters> relabel;
  relabel.fill(0xFF);
  Code next = range.first;
  WordKey out = 0;
  for (int p = 0; p < length; ++p) {
    Code c = code_at(key, length, p);
    if (range.contains(c)) {
      if (relabel[c] == 0xFF) relabel[c] = next++;
      c = relabel[c];
    }
    out = (out << 4) | c;
  }
  return out;
}

std::vector<WordKey> orbit_of(WordKey key, int length, LetterRange range) {
  if (range.count > 10) throw ResourceError("orbit_of: more than 10! permutations");
  std::vector<int> perm(static_cast<std::size_t>(range.count));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<WordKey> out;
  do {
    WordKey image = 0;
    for (int p = 0; p < length; ++p) {
      Code c = code_at(key, length, p);
      if (range.contains(c)) c = static_cast<Code>(range.first + perm[static_cast<std::size_t>(c - range.first)]);
      image = (image << 4) | c;
    }
    out.push_back(image);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ----------------------------------------------------------- orbit sums

OrbitSumBasis::OrbitSumBasis(Alphabet alphabet, int length, Content content, LetterRange range,
                             std::vector<WordKey> reps)
    : alphabet_(alphabet), length_(length), content_(std::move(content)), range_(range), reps_(std::move(reps)) {
  if (range_.first + range_.count > alphabet_.size()) throw ArgumentError("orbit basis: letter range out of bounds");
  if (!std::is_sorted(reps_.begin(), reps_.end())) throw ConsistencyError("orbit basis: representatives unsorted");
}

std::optional<Index> OrbitSumBasis::index_of(WordKey key) const {
  const WordKey c = canonical(key);
  auto it = std::lower_bound(reps_.begin(), reps_.end(), c);
  if (it == reps_.end() || *it != c) return std::nullopt;
  return static_cast<Index>(it - reps_.begin());
}

SparseVector OrbitSumBasis::expansion(Index i, const WeightBasis& basis) const {
  SparseVector out;
  for (WordKey w : orbit(i)) {
    const auto row = basis.index_of(w);
    if (!row) throw ArgumentError("orbit sum expansion: word outside the weight basis");
    out.emplace_back(*row, Rational(1));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::size_t OrbitSumBasis::orbit_size(Index i) const {
  const WordKey rep = reps_[i];
  int used = 0;
  std::uint32_t seen = 0;
  for (int p = 0; p < length_; ++p) {
    const Code c = code_at(rep, length_, p);
    if (range_.contains(c) && !(seen & (1U << c))) {
      seen |= 1U << c;
      ++used;
    }
  }
  std::size_t size = 1;
  for (int k = 0; k < used; ++k) size *= static_cast<std::size_t>(range_.count - k);
  return size;
}

namespace {

void require_uniform_range(const Content& content, int a, LetterRange range) {
  int expected = -1;
  for (int k = 0; k < range.count; ++k) {
    const int c = range.first + k;
    const int count = c < a ? content.alpha[static_cast<std::size_t>(c)] : content.beta[static_cast<std::size_t>(c - a)];
    if (expected >= 0 && count != expected)
      throw ArgumentError("invariant basis: letters of the permuted range occur unequally often");
    expected = count;
  }
}

OrbitSumBasis from_block_partitions(Alphabet alphabet, Content content, LetterRange range, int blocks, int block_size,
                                    int max_ground) {
  const int length = blocks * block_size;
  std::vector<WordKey> reps;
  for (const BlockSetPartition& p : enumerate_block_partitions(blocks, block_size, max_ground)) {
    WordKey key = 0;
    for (std::uint8_t label : p.labels()) key = (key << 4) | static_cast<WordKey>(range.first + label);
    reps.push_back(key);
  }
  return OrbitSumBasis(alphabet, length, std::move(content), range, std::move(reps));
}

}  // namespace

OrbitSumBasis orbit_sum_basis(int a, int b, int max_ground) {
  if (a < 1 || b < 1) throw ArgumentError("orbit_sum_basis: a and b must be positive");
  if (a * b > max_ground) throw ResourceError("orbit_sum_basis: ab exceeds the block partition limit");
  const Alphabet alphabet(a, b);
  Content content{WeakComposition(static_cast<std::size_t>(a), b), WeakComposition(static_cast<std::size_t>(b), 0)};
  return from_block_partitions(alphabet, std::move(content), {0, a}, a, b, max_ground);
}

OrbitSumBasis codomain_orbit_sum_basis(int a, int b, int max_ground) {
  if (a < 1 || b < 1) throw ArgumentError("codomain_orbit_sum_basis: a and b must be positive");
  if (a * b > max_ground) throw ResourceError("codomain_orbit_sum_basis: ab exceeds the block partition limit");
  const Alphabet alphabet(a, b);
  Content content{WeakComposition(static_cast<std::size_t>(a), 0), WeakComposition(static_cast<std::size_t>(b), a)};
  return from_block_partitions(alphabet, std::move(content), {static_cast<Code>(a), b}, b, a, max_ground);
}

OrbitSumBasis invariant_basis(Alphabet alphabet, int length, const Content& content, LetterRange range,
                              std::size_t limit) {
  require_uniform_range(content, alphabet.a, range);
  const WeightBasis basis = weight_basis(length, content.alpha, content.beta, limit);
  std::vector<WordKey> reps;
  for (WordKey w : basis.words())
    if (canonical_in_orbit(w, length, range) == w) reps.push_back(w);
  return OrbitSumBasis(alphabet, length, content, range, std::move(reps));
}

BlockSetPartition block_partition_of(const OrbitSumBasis& basis, Index i) {
  std::vector<int> labels;
  const WordKey rep = basis.representative(i);
  for (int p = 0; p < basis.length(); ++p) {
    const Code c = code_at(rep, basis.length(), p);
    if (!basis.range().contains(c)) throw ArgumentError("block_partition_of: word has letters outside the range");
    labels.push_back(c - basis.range().first);
  }
  return BlockSetPartition::from_labels(labels);
}

// ------------------------------------------------------------------- GL_2

WeightBasis gl2_weight_basis(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw ArgumentError("gl2_weight_basis: need 0 <= k <= n");
  return weight_basis(n, {n - k}, {k});
}

SparseExactMatrix zeta_gl2(int n, int k) {
  if (k == n) throw ArgumentError("zeta_gl2: no letter e left to raise (k = n)");
  if (k < 0 || k > n) throw ArgumentError("zeta_gl2: need 0 <= k < n");
  return phi(1, 1, gl2_weight_basis(n, k)).matrix;
}

SparseVector wedge_sym_vector(int lambda2, int n, int k) {
  if (lambda2 < 0 || k < 0 || k > n || lambda2 > k || lambda2 > n - k)
    throw ArgumentError("wedge_sym_vector: need 0 <= lambda2 <= k and lambda2 <= n - k");
  const WeightBasis basis = gl2_weight_basis(n, k);
  const int tail_e = n - k - lambda2;
  const int tail_f = k - lambda2;
  std::vector<Code> tail_codes;
  tail_codes.insert(tail_codes.end(), static_cast<std::size_t>(tail_e), Code{0});
  tail_codes.insert(tail_codes.end(), static_cast<std::size_t>(tail_f), Code{1});
  const std::vector<WordKey> tails = arrangements(tail_codes);
  const int tail_length = n - 2 * lambda2;

  SparseVector out;
  for (std::uint32_t mask = 0; mask < (1U << lambda2); ++mask) {
    WordKey head = 0;
    for (int r = 0; r < lambda2; ++r) head = (head << 8) | ((mask >> r) & 1U ? 0x10U : 0x01U);
    const Rational sign = std::popcount(mask) % 2 ? -1 : 1;
    for (WordKey t : tails) {
      const auto row = basis.index_of((head << (4 * tail_length)) | t);
      if (!row) throw ConsistencyError("wedge_sym_vector: word outside the weight basis");
      out.emplace_back(*row, sign);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

// ------------------------------------------------------------------ Q split

std::uint32_t marked_mask(WordKey key, int length, std::span<const Code> marked) {
  std::uint32_t mask = 0;
  for (int p = 0; p < length; ++p)
    if (std::find(marked.begin(), marked.end(), code_at(key, length, p)) != marked.end()) mask |= 1U << p;
  return mask;
}

SplitPattern q_block_split(std::span<const WordKey> words, int length, std::span<const Code> marked) {
  std::vector<std::pair<std::uint32_t, Index>> keyed;
  keyed.reserve(words.size());
  for (Index k = 0; k < words.size(); ++k) keyed.emplace_back(marked_mask(words[k], length, marked), k);
  std::sort(keyed.begin(), keyed.end());
  SplitPattern out;
  for (const auto& [mask, index] : keyed) {
    if (out.masks.empty() || out.masks.back() != mask) {
      out.masks.push_back(mask);
      out.members.emplace_back();
    }
    out.members.back().push_back(index);
  }
  return out;
}

std::vector<Index> q_block(std::span<const WordKey> words, int length, std::span<const Code> marked,
                           std::uint32_t q_mask) {
  if (words.empty()) return {};
  const int expected = std::popcount(marked_mask(words.front(), length, marked));
  if (std::popcount(q_mask) != expected)
    throw ArgumentError("q_block: |Q| = " + std::to_string(std::popcount(q_mask)) + " but the split needs " +
                        std::to_string(expected));
  std::vector<Index> out;
  for (Index k = 0; k < words.size(); ++k)
    if (marked_mask(words[k], length, marked) == q_mask) out.push_back(k);
  return out;
}

}  // namespace fh

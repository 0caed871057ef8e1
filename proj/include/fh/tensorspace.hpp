#pragma once

// Words over the alphabet E_1..E_a, F_1..F_b, weight-space bases of the
// tensor power, the raising operators, the S_a action and orbit-sum bases of
// invariant subspaces, and the GL_2 raising operator on words in e and f.
//
// A word of length d <= 16 is packed into a 64-bit key, four bits per
// letter, first letter in the most significant position. Letter codes are
// E_i -> i-1 and F_j -> a+j-1, so comparing keys of equal length is the
// lexicographic order with E_1 < ... < E_a < F_1 < ... < F_b.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fh/combinatorics.hpp"
#include "fh/sparse_matrix.hpp"

namespace fh {

inline constexpr int kMaxWordLength = 16;
inline constexpr int kMaxLetters = 16;
inline constexpr std::size_t kDefaultBasisLimit = 20'000'000;

using WordKey = std::uint64_t;
using Code = std::uint8_t;

enum class LetterKind { E, F };

struct Letter {
  LetterKind kind = LetterKind::E;
  int index = 1;  // 1-based

  bool operator==(const Letter&) const = default;
};

struct Alphabet {
  int a = 0;
  int b = 0;

  Alphabet() = default;
  Alphabet(int a_, int b_);

  int size() const noexcept { return a + b; }
  Code code(Letter letter) const;
  Letter letter(Code code) const;
  Code e(int i) const { return code({LetterKind::E, i}); }
  Code f(int j) const { return code({LetterKind::F, j}); }

  bool operator==(const Alphabet&) const = default;
};

// Occurrence counts: alpha[i-1] counts E_i, beta[j-1] counts F_j.
struct Content {
  WeakComposition alpha;
  WeakComposition beta;

  int length() const;
  bool operator==(const Content&) const = default;
};

WordKey pack_word(std::span<const Code> codes);
std::vector<Code> unpack_word(WordKey key, int length);
inline Code code_at(WordKey key, int length, int position) {
  return static_cast<Code>((key >> (4 * (length - 1 - position))) & 0xF);
}
inline WordKey with_code(WordKey key, int length, int position, Code code) {
  const int shift = 4 * (length - 1 - position);
  return (key & ~(WordKey{0xF} << shift)) | (WordKey{code} << shift);
}

class Word {
 public:
  Word(Alphabet alphabet, std::vector<Letter> letters);
  static Word from_codes(Alphabet alphabet, std::vector<Code> codes);
  static Word from_key(Alphabet alphabet, WordKey key, int length);
  // "E1E2F1"; for the GL_2 alphabet also "eef".
  static Word parse(Alphabet alphabet, std::string_view text);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int length() const noexcept { return static_cast<int>(codes_.size()); }
  Letter at(int position) const { return alphabet_.letter(codes_[static_cast<std::size_t>(position)]); }
  std::span<const Code> codes() const noexcept { return codes_; }
  WordKey key() const { return pack_word(codes_); }
  Content content() const;
  std::string to_string() const;

  bool operator==(const Word& other) const { return alphabet_ == other.alphabet_ && codes_ == other.codes_; }

 private:
  Alphabet alphabet_;
  std::vector<Code> codes_;
};

Content content_of(Alphabet alphabet, WordKey key, int length);
std::string word_to_string(Alphabet alphabet, WordKey key, int length);

// All words of one content, in increasing key order. A content with a
// negative entry denotes the zero space (used as the target of a raising
// operator with nothing to raise).
class WeightBasis {
 public:
  WeightBasis() = default;
  WeightBasis(Alphabet alphabet, int length, Content content, std::vector<WordKey> words);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int length() const noexcept { return length_; }
  const Content& content() const noexcept { return content_; }
  std::size_t size() const noexcept { return words_.size(); }
  std::span<const WordKey> words() const noexcept { return words_; }
  WordKey key(Index i) const { return words_[i]; }
  Word word(Index i) const { return Word::from_key(alphabet_, words_[i], length_); }
  std::optional<Index> index_of(WordKey key) const;

 private:
  Alphabet alphabet_;
  int length_ = 0;
  Content content_;
  std::vector<WordKey> words_;
};

// The alphabet sizes are the lengths of alpha and beta.
WeightBasis weight_basis(int length, const WeakComposition& alpha, const WeakComposition& beta,
                         std::size_t limit = kDefaultBasisLimit);

// Multinomial length! / prod(alpha_i!) prod(beta_j!).
BigInt weight_space_dimension(const Content& content);

struct RaisingMap {
  SparseExactMatrix matrix;
  WeightBasis target;
  // Set when the source content has no E_i: the map is zero and the target
  // is the formal zero space.
  bool vanishes = false;
};

// Raising operator replacing one E_i by F_j, each resulting word weighted
// 1/length, as a matrix between weight bases.
RaisingMap phi(int i, int j, const WeightBasis& basis);

// Combination of words with integer multiplicities; a sparse vector in the
// word basis. Terms are sorted by key after normalise().
struct WordCombination {
  int length = 0;
  std::vector<std::pair<WordKey, std::int64_t>> terms;

  // Sort, merge equal keys and drop zero totals. Throws ResourceError on
  // 64-bit overflow.
  void normalise();
};

// Each term w goes to the sum of the words obtained by replacing one
// occurrence of `from` by `to` (no 1/length factor).
WordCombination raise_combination(const WordCombination& in, Code from, Code to);

// pi is a permutation of {0..a-1} (0-based): E_{i+1} becomes E_{pi[i]+1}.
WordKey sa_act(Alphabet alphabet, std::span<const int> pi, WordKey key, int length);
Word sa_act(std::span<const int> pi, const Word& w);

// Letters with codes in [first, first+count) are permuted by a symmetric
// group acting on letter names.
struct LetterRange {
  Code first = 0;
  int count = 0;

  bool contains(Code c) const noexcept { return c >= first && c < first + count; }
};

// Relabels the letters of the range in order of first appearance; this is
// the least word of the orbit.
WordKey canonical_in_orbit(WordKey key, int length, LetterRange range);
// All distinct words of the orbit, sorted. Throws ResourceError for ranges
// of more than 10 letters.
std::vector<WordKey> orbit_of(WordKey key, int length, LetterRange range);

// Invariant part of a weight space under the symmetric group on a letter
// range, with one orbit sum per canonical word. The content must give every
// letter of the range the same count so that the space is stable.
class OrbitSumBasis {
 public:
  OrbitSumBasis() = default;
  OrbitSumBasis(Alphabet alphabet, int length, Content content, LetterRange range, std::vector<WordKey> reps);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int length() const noexcept { return length_; }
  const Content& content() const noexcept { return content_; }
  LetterRange range() const noexcept { return range_; }
  std::size_t size() const noexcept { return reps_.size(); }
  std::span<const WordKey> representatives() const noexcept { return reps_; }
  WordKey representative(Index i) const { return reps_[i]; }

  WordKey canonical(WordKey key) const { return canonical_in_orbit(key, length_, range_); }
  // Index of the orbit containing key, or nothing when key is not in the space.
  std::optional<Index> index_of(WordKey key) const;
  std::vector<WordKey> orbit(Index i) const { return orbit_of(reps_[i], length_, range_); }
  // Orbit sum as a vector over the weight basis (all coefficients 1).
  SparseVector expansion(Index i, const WeightBasis& basis) const;
  // Number of words in orbit i.
  std::size_t orbit_size(Index i) const;

 private:
  Alphabet alphabet_;
  int length_ = 0;
  Content content_;
  LetterRange range_;
  std::vector<WordKey> reps_;
};

// S_a-invariants of the (a x b, empty) weight space, indexed by the block
// partitions of {0..ab-1}: block k holds the positions of E_{k+1}.
OrbitSumBasis orbit_sum_basis(int a, int b, int max_ground = kDefaultBlockLimit);
// S_b-invariants of the (empty, b x a) weight space over the same alphabet.
OrbitSumBasis codomain_orbit_sum_basis(int a, int b, int max_ground = kDefaultBlockLimit);
// Generic invariant basis by canonical filtering of the weight basis.
OrbitSumBasis invariant_basis(Alphabet alphabet, int length, const Content& content, LetterRange range,
                              std::size_t limit = kDefaultBasisLimit);

BlockSetPartition block_partition_of(const OrbitSumBasis& basis, Index i);

// Words of length n in e < f with k letters f.
WeightBasis gl2_weight_basis(int n, int k);
// Raising operator e -> f on gl2_weight_basis(n, k), weight 1/n.
SparseExactMatrix zeta_gl2(int n, int k);
// (ef - fe) in slot pairs (0,1), ..., (2l-2, 2l-1) followed by the sum of all
// distinct arrangements of e^(n-k-l) f^(k-l), expanded over gl2_weight_basis(n, k).
SparseVector wedge_sym_vector(int lambda2, int n, int k);

// Partition of a word list by the positions holding marked letters. Blocks
// are listed in increasing mask order; members are indices into the list.
struct SplitPattern {
  std::vector<std::uint32_t> masks;
  std::vector<std::vector<Index>> members;

  std::size_t block_count() const noexcept { return masks.size(); }
};

std::uint32_t marked_mask(WordKey key, int length, std::span<const Code> marked);
SplitPattern q_block_split(std::span<const WordKey> words, int length, std::span<const Code> marked);
// Members of the block with the given position set. Throws ArgumentError
// when |Q| differs from the number of marked letters per word.
std::vector<Index> q_block(std::span<const WordKey> words, int length, std::span<const Code> marked,
                           std::uint32_t q_mask);

}  // namespace fh

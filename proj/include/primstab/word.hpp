#pragma once

// Elements of the free group F_n: freely reduced words, cyclic words and
// conjugacy-class canonical forms.
//
// Text format: generator i (0..25) is the i-th lowercase letter, its inverse
// the matching uppercase letter, so "abAB" is the commutator of x1 and x2.

#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace primstab {

/// Raised for malformed input: bad ranks, out-of-range generators, parse errors.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxRank = 26;

/// A generator symbol x_i or its inverse. Ordered a < A < b < B < ...
struct Letter {
  int generator = 0;
  bool inverted = false;

  constexpr Letter inverse() const { return {generator, !inverted}; }
  constexpr bool is_inverse_of(Letter other) const {
    return generator == other.generator && inverted != other.inverted;
  }
  /// Dense index in [0, 2n): 2*generator + inverted. Matches the letter order.
  constexpr int index() const { return 2 * generator + (inverted ? 1 : 0); }
  static constexpr Letter from_index(int index) { return {index / 2, (index % 2) != 0}; }

  char to_char() const;

  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word in F_rank. Construction always reduces.
class Word {
 public:
  explicit Word(int rank);
  Word(int rank, std::vector<Letter> letters);

  int rank() const { return rank_; }
  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  std::string to_string() const;

  /// Group product, freely reduced. Ranks must agree.
  friend Word operator*(const Word& lhs, const Word& rhs);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  int rank_;
  std::vector<Letter> letters_;
};

/// Nonempty cyclically reduced word, stored in its least rotation under the
/// letter order. Distinct objects represent distinct (oriented) conjugacy
/// classes.
class CyclicWord {
 public:
  /// `letters` must be nonempty and cyclically reduced; it is rotated into
  /// canonical position.
  CyclicWord(int rank, std::vector<Letter> letters);

  int rank() const { return rank_; }
  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word as_word() const { return Word(rank_, letters_); }
  CyclicWord inverse() const;
  std::string to_string() const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  /// Shortlex under the letter order.
  friend std::strong_ordering operator<=>(const CyclicWord& lhs, const CyclicWord& rhs);

 private:
  int rank_;
  std::vector<Letter> letters_;
};

void check_rank(int rank);

Word free_reduce(std::span<const Letter> letters, int rank);

struct CyclicReduction {
  CyclicWord cyclic;
  Word conjugator;  // w = conjugator * cyclic * conjugator^-1
};

/// Throws ValidationError("trivial element") for the empty word.
CyclicReduction cyclic_reduce(const Word& w);

/// Least rotation of c, or of c and its inverse when include_inversion is set.
CyclicWord canonical_class(const CyclicWord& c, bool include_inversion = true);

/// c repeated k times (k >= 1). No cancellation occurs at the seams.
Word power(const CyclicWord& c, int k);

/// Does pattern occur in the bi-infinite periodic word ...ccc... ?
bool cyclic_subword_occurs(const CyclicWord& host, const Word& pattern);

/// Abelianization: exponent sum of each generator.
std::vector<int> exponent_sums(std::span<const Letter> letters, int rank);

Letter parse_letter(char ch);
/// Parses the ASCII format. Letters must be below `rank`; the result is freely reduced.
Word parse_word(std::string_view text, int rank);
/// Smallest rank (at least 2) able to hold every letter in `text`.
int infer_rank(std::string_view text);

std::string to_string(std::span<const Letter> letters);

}  // namespace primstab

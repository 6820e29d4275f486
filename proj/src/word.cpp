#include "primstab/word.hpp"

#include <algorithm>
#include <cctype>

namespace primstab {

namespace {

void check_letters(std::span<const Letter> letters, int rank) {
  for (Letter l : letters) {
    if (l.generator < 0 || l.generator >= rank) {
      throw ValidationError("generator index " + std::to_string(l.generator) +
                            " out of range for rank " + std::to_string(rank));
    }
  }
}

void check_same_rank(int lhs, int rhs) {
  if (lhs != rhs) {
    throw ValidationError("rank mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs));
  }
}

bool is_cyclically_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
    if (letters[i].is_inverse_of(letters[i + 1])) return false;
  }
  return letters.empty() || !letters.front().is_inverse_of(letters.back());
}

// Start offset of the lexicographically least rotation.
std::size_t least_rotation(std::span<const Letter> letters) {
  const std::size_t n = letters.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      Letter x = letters[(r + k) % n];
      Letter y = letters[(best + k) % n];
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  return best;
}

std::vector<Letter> rotated(std::span<const Letter> letters, std::size_t offset) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (std::size_t k = 0; k < letters.size(); ++k) out.push_back(letters[(offset + k) % letters.size()]);
  return out;
}

std::vector<Letter> inverted(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.push_back(it->inverse());
  return out;
}

}  // namespace

char Letter::to_char() const {
  char base = static_cast<char>('a' + generator);
  return inverted ? static_cast<char>(std::toupper(static_cast<unsigned char>(base))) : base;
}

void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw ValidationError("rank must lie in [1, " + std::to_string(kMaxRank) + "], got " +
                          std::to_string(rank));
  }
}

Word::Word(int rank) : rank_(rank) { check_rank(rank); }

Word::Word(int rank, std::vector<Letter> letters) : rank_(rank) {
  check_rank(rank);
  check_letters(letters, rank);
  // Stack-based free reduction.
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back().is_inverse_of(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  letters_ = std::move(out);
}

Word Word::inverse() const { return Word(rank_, inverted(letters_)); }

std::string Word::to_string() const { return primstab::to_string(letters_); }

Word operator*(const Word& lhs, const Word& rhs) {
  check_same_rank(lhs.rank_, rhs.rank_);
  std::vector<Letter> joined(lhs.letters_);
  joined.insert(joined.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(lhs.rank_, std::move(joined));
}

CyclicWord::CyclicWord(int rank, std::vector<Letter> letters) : rank_(rank) {
  check_rank(rank);
  check_letters(letters, rank);
  if (letters.empty()) throw ValidationError("trivial element");
  if (!is_cyclically_reduced(letters)) {
    throw ValidationError("word " + primstab::to_string(letters) + " is not cyclically reduced");
  }
  letters_ = rotated(letters, least_rotation(letters));
}

CyclicWord CyclicWord::inverse() const { return CyclicWord(rank_, inverted(letters_)); }

std::string CyclicWord::to_string() const { return primstab::to_string(letters_); }

std::strong_ordering operator<=>(const CyclicWord& lhs, const CyclicWord& rhs) {
  if (auto c = lhs.rank_ <=> rhs.rank_; c != 0) return c;
  if (auto c = lhs.letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(lhs.letters_.begin(), lhs.letters_.end(),
                                                rhs.letters_.begin(), rhs.letters_.end());
}

Word free_reduce(std::span<const Letter> letters, int rank) {
  return Word(rank, std::vector<Letter>(letters.begin(), letters.end()));
}

CyclicReduction cyclic_reduce(const Word& w) {
  if (w.empty()) throw ValidationError("trivial element");
  auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo].is_inverse_of(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(letters.begin() + lo, letters.begin() + hi);
  std::vector<Letter> conj(letters.begin(), letters.begin() + lo);
  // CyclicWord stores the least rotation; absorb the rotation prefix into the conjugator.
  std::size_t shift = least_rotation(core);
  conj.insert(conj.end(), core.begin(), core.begin() + shift);
  Word conjugator(w.rank(), std::move(conj));
  return {CyclicWord(w.rank(), std::move(core)), std::move(conjugator)};
}

CyclicWord canonical_class(const CyclicWord& c, bool include_inversion) {
  if (!include_inversion) return c;
  CyclicWord inv = c.inverse();
  return std::lexicographical_compare(inv.letters().begin(), inv.letters().end(),
                                      c.letters().begin(), c.letters().end())
             ? inv
             : c;
}

Word power(const CyclicWord& c, int k) {
  if (k < 1) throw ValidationError("power exponent must be >= 1");
  std::vector<Letter> out;
  out.reserve(c.size() * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.insert(out.end(), c.letters().begin(), c.letters().end());
  return Word(c.rank(), std::move(out));
}

bool cyclic_subword_occurs(const CyclicWord& host, const Word& pattern) {
  check_same_rank(host.rank(), pattern.rank());
  if (pattern.empty()) return true;
  const std::size_t n = host.size();
  const std::size_t m = pattern.size();
  // Every length-m window of the periodic word starts at some offset < n.
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t k = 0;
    while (k < m && host[(start + k) % n] == pattern[k]) ++k;
    if (k == m) return true;
  }
  return false;
}

std::vector<int> exponent_sums(std::span<const Letter> letters, int rank) {
  std::vector<int> sums(static_cast<std::size_t>(rank), 0);
  for (Letter l : letters) sums.at(static_cast<std::size_t>(l.generator)) += l.inverted ? -1 : 1;
  return sums;
}

Letter parse_letter(char ch) {
  if (ch >= 'a' && ch <= 'z') return {ch - 'a', false};
  if (ch >= 'A' && ch <= 'Z') return {ch - 'A', true};
  throw ValidationError(std::string("invalid letter '") + ch + "'");
}

Word parse_word(std::string_view text, int rank) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char ch : text) letters.push_back(parse_letter(ch));
  return Word(rank, std::move(letters));
}

int infer_rank(std::string_view text) {
  int rank = 2;
  for (char ch : text) rank = std::max(rank, parse_letter(ch).generator + 1);
  return rank;
}

std::string to_string(std::span<const Letter> letters) {
  std::string out;
  out.reserve(letters.size());
  for (Letter l : letters) out.push_back(l.to_char());
  return out;
}

}  // namespace primstab

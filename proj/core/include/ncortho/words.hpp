#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ncortho {

/// Element of the free monoid on the letters 1..N.
///
/// Words are ordered graded-lexicographically: shorter words come first and
/// words of equal length compare letter by letter. The empty word is the
/// identity and precedes everything. Comparing words over different alphabets
/// throws DomainError.
class Word {
 public:
  /// The empty word over an alphabet of the given size.
  explicit Word(int alphabet_size);
  Word(int alphabet_size, std::vector<int> letters);
  Word(int alphabet_size, std::initializer_list<int> letters);

  /// Parses "1,1,2" or "112" (single-digit letters only in the compact form).
  static Word parse(int alphabet_size, const std::string& text);

  int alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::span<const int> letters() const noexcept { return letters_; }
  int operator[](std::size_t i) const { return letters_[i]; }
  int front() const { return letters_.front(); }
  int back() const { return letters_.back(); }

  /// Concatenation στ.
  Word operator*(const Word& tail) const;
  /// Letter k prepended.
  Word prepend(int letter) const;
  Word append(int letter) const;
  /// Letters [first, first + count).
  Word subword(std::size_t first, std::size_t count) const;

  /// 0-based position among the words of the same length.
  std::size_t rank() const;
  /// 0-based position among all words of length <= length(), i.e. the
  /// row/column index used by every Gram or coefficient matrix.
  std::size_t graded_index() const;

  std::string to_string() const;

  friend bool operator==(const Word& a, const Word& b) noexcept {
    return a.alphabet_size_ == b.alphabet_size_ && a.letters_ == b.letters_;
  }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  int alphabet_size_;
  std::vector<int> letters_;
};

enum class Ordering { less, equal, greater };

/// Graded lexicographic comparison; throws DomainError on mismatched alphabets.
Ordering compare(const Word& a, const Word& b);

/// Reversal I(i_1...i_l) = i_l...i_1.
Word involute(const Word& w);

/// Default cap on the number of words a single enumeration may produce.
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// N^n, throwing DomainError when it exceeds `cap`.
std::size_t words_of_length(int alphabet_size, std::size_t length,
                            std::size_t cap = kDefaultEnumerationCap);
/// Number of words of length <= n: 1 + N + ... + N^n.
std::size_t words_up_to(int alphabet_size, std::size_t length,
                        std::size_t cap = kDefaultEnumerationCap);

/// All N^n words of length n in increasing order; position = rank().
std::vector<Word> enumerate(int alphabet_size, std::size_t length,
                            std::size_t cap = kDefaultEnumerationCap);
/// All words of length <= n in increasing order; position = graded_index().
std::vector<Word> enumerate_up_to(int alphabet_size, std::size_t length,
                                  std::size_t cap = kDefaultEnumerationCap);

/// Inverse of rank() for words of length n.
Word word_from_rank(int alphabet_size, std::size_t length, std::size_t rank);
/// Inverse of graded_index().
Word word_from_graded_index(int alphabet_size, std::size_t index);

struct Block {
  int letter;
  int exponent;
  friend bool operator==(const Block&, const Block&) = default;
};

/// σ = i_1^{k_1} ... i_p^{k_p} with adjacent letters distinct.
struct BlockForm {
  std::vector<Block> blocks;
  Word expand(int alphabet_size) const;
  friend bool operator==(const BlockForm&, const BlockForm&) = default;
};

/// Unique alternating block form; throws DomainError on the empty word.
BlockForm block_decompose(const Word& w);

/// p when w = k^p τ with τ not starting with k; 0 when w does not start with k.
int leading_run(const Word& w, int letter);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace ncortho

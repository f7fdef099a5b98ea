#include "ncortho/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ncortho/errors.hpp"

namespace ncortho {
namespace {

void check_alphabet(int alphabet_size) {
  if (alphabet_size < 1) {
    throw DomainError("alphabet size must be positive, got " +
                      std::to_string(alphabet_size));
  }
}

void check_letters(int alphabet_size, const std::vector<int>& letters) {
  for (int letter : letters) {
    if (letter < 1 || letter > alphabet_size) {
      throw DomainError("letter " + std::to_string(letter) +
                        " outside alphabet 1.." + std::to_string(alphabet_size));
    }
  }
}

void check_same_alphabet(const Word& a, const Word& b) {
  if (a.alphabet_size() != b.alphabet_size()) {
    throw DomainError("words over different alphabets (" +
                      std::to_string(a.alphabet_size()) + " vs " +
                      std::to_string(b.alphabet_size()) + ")");
  }
}

}  // namespace

Word::Word(int alphabet_size) : alphabet_size_(alphabet_size) {
  check_alphabet(alphabet_size);
}

Word::Word(int alphabet_size, std::vector<int> letters)
    : alphabet_size_(alphabet_size), letters_(std::move(letters)) {
  check_alphabet(alphabet_size);
  check_letters(alphabet_size, letters_);
}

Word::Word(int alphabet_size, std::initializer_list<int> letters)
    : Word(alphabet_size, std::vector<int>(letters)) {}

Word Word::parse(int alphabet_size, const std::string& text) {
  std::vector<int> letters;
  if (text.find(',') != std::string::npos) {
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        letters.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw DomainError("cannot parse letter '" + item + "' in word '" + text + "'");
      }
    }
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw DomainError("cannot parse word '" + text + "'");
      }
      letters.push_back(c - '0');
    }
  }
  return Word(alphabet_size, std::move(letters));
}

Word Word::operator*(const Word& tail) const {
  check_same_alphabet(*this, tail);
  Word out(*this);
  out.letters_.insert(out.letters_.end(), tail.letters_.begin(), tail.letters_.end());
  return out;
}

Word Word::prepend(int letter) const {
  std::vector<int> letters;
  letters.reserve(letters_.size() + 1);
  letters.push_back(letter);
  letters.insert(letters.end(), letters_.begin(), letters_.end());
  return Word(alphabet_size_, std::move(letters));
}

Word Word::append(int letter) const {
  std::vector<int> letters = letters_;
  letters.push_back(letter);
  return Word(alphabet_size_, std::move(letters));
}

Word Word::subword(std::size_t first, std::size_t count) const {
  if (first + count > letters_.size()) {
    throw DomainError("subword range exceeds word length");
  }
  auto begin = letters_.begin() + static_cast<std::ptrdiff_t>(first);
  return Word(alphabet_size_,
              std::vector<int>(begin, begin + static_cast<std::ptrdiff_t>(count)));
}

std::size_t Word::rank() const {
  std::size_t r = 0;
  for (int letter : letters_) {
    r = r * static_cast<std::size_t>(alphabet_size_) + static_cast<std::size_t>(letter - 1);
  }
  return r;
}

std::size_t Word::graded_index() const {
  return words_up_to(alphabet_size_, length()) -
         words_of_length(alphabet_size_, length()) + rank();
}

std::string Word::to_string() const {
  if (letters_.empty()) return "()";
  std::string out;
  const bool compact = alphabet_size_ < 10;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += std::to_string(letters_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  switch (compare(a, b)) {
    case Ordering::less:
      return std::strong_ordering::less;
    case Ordering::greater:
      return std::strong_ordering::greater;
    case Ordering::equal:
      break;
  }
  return std::strong_ordering::equal;
}

Ordering compare(const Word& a, const Word& b) {
  check_same_alphabet(a, b);
  if (a.length() != b.length()) {
    return a.length() < b.length() ? Ordering::less : Ordering::greater;
  }
  for (std::size_t i = 0; i < a.length(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? Ordering::less : Ordering::greater;
  }
  return Ordering::equal;
}

Word involute(const Word& w) {
  std::vector<int> letters(w.letters().rbegin(), w.letters().rend());
  return Word(w.alphabet_size(), std::move(letters));
}

std::size_t words_of_length(int alphabet_size, std::size_t length, std::size_t cap) {
  check_alphabet(alphabet_size);
  std::size_t count = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (count > cap / static_cast<std::size_t>(alphabet_size)) {
      throw DomainError("enumeration of " + std::to_string(alphabet_size) + "^" +
                        std::to_string(length) + " words exceeds cap " +
                        std::to_string(cap));
    }
    count *= static_cast<std::size_t>(alphabet_size);
  }
  return count;
}

std::size_t words_up_to(int alphabet_size, std::size_t length, std::size_t cap) {
  std::size_t total = 0;
  for (std::size_t j = 0; j <= length; ++j) total += words_of_length(alphabet_size, j, cap);
  if (total > cap) {
    throw DomainError("enumeration of words up to length " + std::to_string(length) +
                      " exceeds cap " + std::to_string(cap));
  }
  return total;
}

Word word_from_rank(int alphabet_size, std::size_t length, std::size_t rank) {
  const std::size_t count = words_of_length(alphabet_size, length);
  if (rank >= count) throw DomainError("rank out of range");
  std::vector<int> letters(length);
  for (std::size_t i = length; i-- > 0;) {
    letters[i] = static_cast<int>(rank % static_cast<std::size_t>(alphabet_size)) + 1;
    rank /= static_cast<std::size_t>(alphabet_size);
  }
  return Word(alphabet_size, std::move(letters));
}

Word word_from_graded_index(int alphabet_size, std::size_t index) {
  std::size_t length = 0;
  for (;;) {
    const std::size_t count = words_of_length(alphabet_size, length);
    if (index < count) return word_from_rank(alphabet_size, length, index);
    index -= count;
    ++length;
  }
}

std::vector<Word> enumerate(int alphabet_size, std::size_t length, std::size_t cap) {
  const std::size_t count = words_of_length(alphabet_size, length, cap);
  std::vector<Word> out;
  out.reserve(count);
  std::vector<int> letters(length, 1);
  for (std::size_t r = 0; r < count; ++r) {
    out.emplace_back(alphabet_size, letters);
    // odometer increment, last letter fastest
    for (std::size_t i = length; i-- > 0;) {
      if (letters[i] < alphabet_size) {
        ++letters[i];
        break;
      }
      letters[i] = 1;
    }
  }
  return out;
}

std::vector<Word> enumerate_up_to(int alphabet_size, std::size_t length, std::size_t cap) {
  std::vector<Word> out;
  out.reserve(words_up_to(alphabet_size, length, cap));
  for (std::size_t j = 0; j <= length; ++j) {
    auto level = enumerate(alphabet_size, j, cap);
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

Word BlockForm::expand(int alphabet_size) const {
  std::vector<int> letters;
  for (const Block& b : blocks) letters.insert(letters.end(), static_cast<std::size_t>(b.exponent), b.letter);
  return Word(alphabet_size, std::move(letters));
}

BlockForm block_decompose(const Word& w) {
  if (w.empty()) throw DomainError("block form of the empty word is undefined");
  BlockForm form;
  for (int letter : w.letters()) {
    if (!form.blocks.empty() && form.blocks.back().letter == letter) {
      ++form.blocks.back().exponent;
    } else {
      form.blocks.push_back({letter, 1});
    }
  }
  return form;
}

int leading_run(const Word& w, int letter) {
  int run = 0;
  for (int l : w.letters()) {
    if (l != letter) break;
    ++run;
  }
  return run;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = std::hash<int>{}(w.alphabet_size());
  for (int letter : w.letters()) {
    h ^= static_cast<std::size_t>(letter) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h ^ w.length();
}

}  // namespace ncortho

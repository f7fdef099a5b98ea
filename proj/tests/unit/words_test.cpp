#include <algorithm>

#include "doctest.h"
#include "ncortho/errors.hpp"
#include "ncortho/words.hpp"

using namespace ncortho;

namespace {
Word w2(const char* s) { return Word::parse(2, s); }
}  // namespace

TEST_CASE("graded lexicographic comparison") {
  CHECK(compare(Word(2), w2("1")) == Ordering::less);
  CHECK(compare(w2("12"), w2("21")) == Ordering::less);
  CHECK(compare(w2("2"), w2("11")) == Ordering::less);
  CHECK(compare(w2("21"), w2("21")) == Ordering::equal);
  CHECK(compare(w2("111"), w2("22")) == Ordering::greater);
  CHECK(w2("2") < w2("11"));
  CHECK_THROWS_AS(compare(Word(2, {1}), Word(3, {1})), DomainError);
}

TEST_CASE("order is total on short words") {
  for (int n = 1; n <= 3; ++n) {
    const auto words = enumerate_up_to(n, 4);
    for (const auto& a : words) {
      for (const auto& b : words) {
        const Ordering ab = compare(a, b);
        const Ordering ba = compare(b, a);
        CHECK((ab == Ordering::equal) == (a == b));
        CHECK((ab == Ordering::less) == (ba == Ordering::greater));
      }
    }
    // Enumeration is strictly increasing, so transitivity reduces to the
    // position order it induces; spot-check every ordered triple at N=2.
    if (n == 2) {
      const auto short_words = enumerate_up_to(2, 3);
      for (const auto& a : short_words)
        for (const auto& b : short_words)
          for (const auto& c : short_words)
            if (compare(a, b) == Ordering::less && compare(b, c) == Ordering::less) {
              CHECK(compare(a, c) == Ordering::less);
            }
    }
  }
}

TEST_CASE("involution") {
  CHECK(involute(w2("112")) == w2("211"));
  CHECK(involute(Word(2)) == Word(2));
  CHECK(involute(w2("1")) == w2("1"));
  for (const auto& a : enumerate_up_to(2, 3)) {
    CHECK(involute(involute(a)) == a);
    for (const auto& b : enumerate_up_to(2, 2)) CHECK(involute(a * b) == involute(b) * involute(a));
  }
}

TEST_CASE("enumeration and rank") {
  const auto e22 = enumerate(2, 2);
  REQUIRE(e22.size() == 4);
  CHECK(e22[0] == w2("11"));
  CHECK(e22[1] == w2("12"));
  CHECK(e22[2] == w2("21"));
  CHECK(e22[3] == w2("22"));
  const auto e20 = enumerate(2, 0);
  REQUIRE(e20.size() == 1);
  CHECK(e20[0].empty());
  const auto e31 = enumerate(3, 1);
  REQUIRE(e31.size() == 3);
  CHECK(e31[2] == Word(3, {3}));

  for (int N = 1; N <= 3; ++N) {
    for (std::size_t n = 0; n <= 4; ++n) {
      const auto words = enumerate(N, n);
      CHECK(words.size() == words_of_length(N, n));
      CHECK(std::is_sorted(words.begin(), words.end()));
      CHECK(std::adjacent_find(words.begin(), words.end()) == words.end());
      for (std::size_t i = 0; i < words.size(); ++i) {
        CHECK(words[i].rank() == i);
        CHECK(word_from_rank(N, n, i) == words[i]);
      }
      // Words starting with 1, then with 2, ... in order reproduce the list.
      if (n >= 1) {
        std::vector<Word> by_letter;
        for (int k = 1; k <= N; ++k)
          for (const auto& w : enumerate(N, n - 1)) by_letter.push_back(w.prepend(k));
        CHECK(by_letter == words);
      }
    }
    const auto all = enumerate_up_to(N, 4);
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].graded_index() == i);
      CHECK(word_from_graded_index(N, i) == all[i]);
    }
  }
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate(10, 7), DomainError);
  CHECK_NOTHROW(enumerate(10, 7, 20'000'000).size());
  CHECK_THROWS_AS(words_up_to(2, 30), DomainError);
}

TEST_CASE("block form and leading run") {
  const BlockForm bf = block_decompose(w2("1122"));
  REQUIRE(bf.blocks.size() == 2);
  CHECK(bf.blocks[0] == Block{1, 2});
  CHECK(bf.blocks[1] == Block{2, 2});
  CHECK(leading_run(w2("112"), 1) == 2);
  CHECK(leading_run(w2("112"), 2) == 0);
  CHECK(leading_run(w2("222"), 2) == 3);
  CHECK(leading_run(Word(2), 1) == 0);
  CHECK_THROWS_AS(block_decompose(Word(2)), DomainError);
  for (const auto& w : enumerate_up_to(3, 4)) {
    if (w.empty()) continue;
    const auto form = block_decompose(w);
    CHECK(form.expand(3) == w);
    for (std::size_t i = 1; i < form.blocks.size(); ++i) CHECK(form.blocks[i].letter != form.blocks[i - 1].letter);
    for (int k = 1; k <= 3; ++k) {
      CHECK(leading_run(w, k) == (form.blocks[0].letter == k ? form.blocks[0].exponent : 0));
    }
  }
}

TEST_CASE("construction and parsing") {
  CHECK_THROWS_AS(Word(2, {3}), DomainError);
  CHECK_THROWS_AS(Word(2, {0}), DomainError);
  CHECK_THROWS_AS(Word(0), DomainError);
  CHECK(Word::parse(3, "1,3,2") == Word(3, {1, 3, 2}));
  CHECK(Word::parse(3, "132") == Word(3, {1, 3, 2}));
  CHECK_THROWS_AS(Word::parse(3, "1,x"), DomainError);
  CHECK(w2("12").to_string() == "12");
  CHECK(Word(2).to_string() == "()");
  CHECK(w2("1211").subword(1, 2) == w2("21"));
  CHECK(w2("12") * w2("2") == w2("122"));
}

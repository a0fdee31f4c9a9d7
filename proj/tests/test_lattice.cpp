#include <doctest.h>

#include <set>

#include "gibbsline/lattice.hpp"

using namespace gibbsline;

TEST_CASE("alphabet defaults and lookup") {
  Alphabet A;
  CHECK(A.size() == 2);
  CHECK(A.index_of("+1") == 0);
  CHECK(A.index_of("-1") == 1);
  CHECK_THROWS_AS(A.index_of("0"), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet({"a"}), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
  Alphabet B({"u", "d", "0"});
  CHECK(B.size() == 3);
  CHECK(B.index_of("0") == 2);
}

TEST_CASE("word_index / index_word round trip, binary and ternary") {
  for (int asize : {2, 3}) {
    for (int r = 1; r <= (asize == 2 ? 8 : 5); ++r) {
      long dim = pow_long(asize, r);
      for (long i = 0; i < dim; ++i) {
        Word w = index_word(i, r, asize);
        CHECK(static_cast<int>(w.size()) == r);
        CHECK(word_index(w, r, asize) == i);
      }
    }
  }
  // big-endian: first symbol is the most significant digit
  CHECK(word_index({1, 0, 0}, 3, 2) == 4);
  CHECK(word_index({0, 0, 1}, 3, 2) == 1);
  CHECK(word_index({2, 1}, 2, 3) == 7);
}

TEST_CASE("word_index error paths") {
  CHECK_THROWS_AS(word_index({0, 1}, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(word_index({0, 2}, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(word_index({-1}, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(index_word(-1, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(index_word(4, 2, 2), std::invalid_argument);
}

TEST_CASE("overlap compatibility") {
  // r = 1: empty overlap, always compatible
  CHECK(overlap_compatible({0}, {1}));
  CHECK(overlap_compatible({0, 1, 1}, {1, 1, 0}));
  CHECK_FALSE(overlap_compatible({0, 1, 1}, {1, 0, 0}));
  CHECK_THROWS_AS(overlap_compatible({0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(overlap_compatible({}, {}), std::invalid_argument);
  // exactly |A|^(r+1) compatible pairs among the |A|^(2r) candidates
  for (int r = 1; r <= 5; ++r) {
    long count = 0;
    for_each_word(r, 2, [&](const Word& a) {
      for_each_word(r, 2, [&](const Word& b) {
        if (overlap_compatible(a, b)) ++count;
      });
    });
    CHECK(count == pow_long(2, r + 1));
  }
}

TEST_CASE("periodic point enumeration") {
  Alphabet A;
  auto range = enumerate_periodic_points(3, A);
  CHECK(range.size() == 8);
  std::set<Word> seen;
  for (const Word& w : range) {
    CHECK(w.size() == 3);
    seen.insert(w);
  }
  CHECK(seen.size() == 8);
  CHECK_THROWS_AS(enumerate_periodic_points(0, A), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_periodic_points(23, A), std::invalid_argument);
  CHECK_NOTHROW(enumerate_periodic_points(25, A, 30));
}

TEST_CASE("for_each_word enumerates in index order") {
  long expect = 0;
  for_each_word(4, 3, [&](const Word& w) { CHECK(word_index(w, 4, 3) == expect++); });
  CHECK(expect == 81);
  // length 0 visits exactly the empty word once
  int calls = 0;
  for_each_word(0, 2, [&](const Word& w) {
    CHECK(w.empty());
    ++calls;
  });
  CHECK(calls == 1);
}

TEST_CASE("word_to_string") {
  CHECK(word_to_string({0, 1, 0}) == "010");
  CHECK(word_to_string({}) == "");
  CHECK(word_to_string({2, 1}) == "21");
}

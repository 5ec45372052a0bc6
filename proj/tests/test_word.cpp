#include <random>

#include "doctest.h"
#include "sl3/word.hpp"

using namespace sl3;

namespace {

// Brute-force canonical rotation: smallest syllable rotation of the cyclic
// reduction under the unit-step order with x_i < x_i^-1 < x_{i+1}.
std::vector<std::pair<int, int>> unit_steps(const std::vector<Letter>& ls) {
  std::vector<std::pair<int, int>> out;
  for (const Letter& l : ls)
    for (int k = 0; k < std::abs(l.exp); ++k) out.push_back({l.index, l.exp > 0 ? 0 : 1});
  return out;
}

std::vector<Letter> oracle_key(std::vector<Letter> ls) {
  std::vector<Letter> red;
  for (const Letter& l : ls) {
    if (!red.empty() && red.back().index == l.index) {
      red.back().exp += l.exp;
      if (red.back().exp == 0) red.pop_back();
    } else {
      red.push_back(l);
    }
  }
  while (red.size() >= 2 && red.front().index == red.back().index) {
    red.front().exp += red.back().exp;
    red.pop_back();
    if (red.front().exp == 0) red.erase(red.begin());
  }
  std::vector<Letter> best = red;
  for (std::size_t k = 1; k < red.size(); ++k) {
    std::vector<Letter> rot(red.begin() + k, red.end());
    rot.insert(rot.end(), red.begin(), red.begin() + k);
    if (unit_steps(rot) < unit_steps(best)) best = rot;
  }
  return best;
}

Word random_raw(std::mt19937_64& rng, int r, int len) {
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i) {
    int e = 0;
    while (e == 0) e = static_cast<int>(rng() % 7) - 3;
    ls.push_back({1 + static_cast<int>(rng() % r), e});
  }
  return Word(ls);
}

}  // namespace

TEST_SUITE("word") {
  TEST_CASE("parse and free reduction") {
    Word w = parse_word("x1 x2^-1");
    REQUIRE(w.size() == 2);
    CHECK(w[0] == Letter{1, 1});
    CHECK(w[1] == Letter{2, -1});
    CHECK(parse_word("x1 x1^2").letters() == std::vector<Letter>{{1, 3}});
    CHECK(parse_word("x1 x2 x2^-1 x1^-1").empty());
    CHECK(parse_word("").empty());
    CHECK(parse_word("[[1,1],[2,-1]]") == w);
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_word("x0"), ParseError);
    CHECK_THROWS_AS(parse_word("x1^0"), ParseError);
    CHECK_THROWS_AS(parse_word("x1 y2"), ParseError);
    CHECK_THROWS_AS(parse_word("x1^"), ParseError);
    CHECK_THROWS_AS(parse_word("[[1,0]]"), ParseError);
    try {
      parse_word("x1 x2 q");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 6);
    }
  }

  TEST_CASE("print then parse is the identity") {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 200; ++n) {
      Word w = random_raw(rng, 4, 1 + static_cast<int>(rng() % 8));
      CHECK(parse_word(w.str()) == w);
      CHECK(parse_t_notation(canonical_cyclic_key(w).str()) == canonical_cyclic_key(w).word());
    }
  }

  TEST_CASE("canonical keys") {
    CHECK(canonical_cyclic_key(parse_word("x2 x3 x1")).word() == parse_word("x1 x2 x3"));
    CHECK(canonical_cyclic_key(parse_word("x1 x2 x1^-1")).word() == parse_word("x2"));
    CHECK(canonical_cyclic_key(parse_word("x1 x2 x1 x3")).word() == parse_word("x1 x2 x1 x3"));
    CHECK(canonical_cyclic_key(parse_word("x1 x1^-1")).empty());
    CHECK(canonical_cyclic_key(parse_word("x2^-1 x1")).str() == "t(1,-2)");
    CHECK(canonical_cyclic_key(parse_word("x1^2 x2")).str() == "t(1,1,2)");
  }

  TEST_CASE("canonical key agrees with brute force over rotations") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 500; ++n) {
      Word w = random_raw(rng, 3, 1 + static_cast<int>(rng() % 9));
      CyclicKey k = canonical_cyclic_key(w);
      CHECK(k.word() == Word(oracle_key(w.letters())));
      for (std::size_t j = 0; j < w.size(); ++j) CHECK(canonical_cyclic_key(w.rotated(j)) == k);
    }
  }

  TEST_CASE("weighted length") {
    CHECK(weighted_length(parse_word("x1^-1")) == 2);
    CHECK(weighted_length(parse_word("x1^-1 x2^-1 x3^-1")) == 6);
    CHECK(weighted_length(parse_word("x1 x2 x3")) == 3);
    CHECK(weighted_length(parse_word("x1^3 x2^-2")) == 7);
    CHECK(canonical_cyclic_key(parse_word("x1 x2^-1")).weight() == 3);
    CHECK(unit_count(parse_word("x1^3 x2^-2")) == 5);
  }

  TEST_CASE("multidegree") {
    CHECK(multidegree(parse_word("x1 x2 x1^-1 x2^-1"), 2) == std::vector<int>{3, 3});
    CHECK(multidegree(parse_word("x1 x2 x3"), 3) == std::vector<int>{1, 1, 1});
    CHECK(multidegree(parse_word("x1 x2^-1"), 3) == std::vector<int>{1, 2, 0});
    CHECK_THROWS(multidegree(parse_word("x4"), 3));
  }

  TEST_CASE("length and multidegree are rotation invariant") {
    std::mt19937_64 rng(9);
    for (int n = 0; n < 200; ++n) {
      Word w = random_raw(rng, 4, 1 + static_cast<int>(rng() % 8)).cyclically_reduced();
      int total = 0;
      for (int d : multidegree(w, 4)) total += d;
      CHECK(total == weighted_length(w));
      for (std::size_t j = 0; j < w.size(); ++j) {
        CHECK(weighted_length(w.rotated(j)) == weighted_length(w));
        CHECK(multidegree(w.rotated(j), 4) == multidegree(w, 4));
      }
    }
  }

  TEST_CASE("group operations") {
    Word w = parse_word("x1 x2^-1 x3^2");
    CHECK((w * w.inverse()).empty());
    CHECK(w.power(2) == w * w);
    CHECK(w.power(-1) == w.inverse());
    CHECK(w.power(0).empty());
    CHECK(parse_word("x1 x2 x1^-1").cyclically_reduced() == parse_word("x2"));
    CHECK(parse_word("x1^2 x2 x1^-1").cyclically_reduced() == parse_word("x1 x2"));
    CHECK(w.max_index() == 3);
  }

  TEST_CASE("random words respect their bounds") {
    for (std::uint64_t s = 0; s < 200; ++s) {
      Word w = random_word(s, 4, 10, 3);
      int len = 0;
      for (const Letter& l : w.letters()) {
        CHECK(std::abs(l.exp) <= 3);
        CHECK(l.index <= 4);
        len += std::abs(l.exp);
      }
      CHECK(len >= 1);
      CHECK(len <= 10);
      CHECK(random_word(s, 4, 10, 3) == w);
    }
  }
}

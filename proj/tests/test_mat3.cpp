#include <random>

#include "doctest.h"
#include "sl3/mat3.hpp"
#include "support.hpp"

using namespace sl3;
using sl3::testing::diag;
using sl3::testing::shear;

namespace {

MatQ random_integer_matrix(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MatQ m;
  for (auto& e : m.a) e = static_cast<int>(rng() % 11) - 5;
  return m;
}

// Coefficients of det(tI - X) from principal minors.
std::array<Rational, 4> minors_oracle(const MatQ& m) {
  Rational e2 = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) e2 += m(i, i) * m(j, j) - m(i, j) * m(j, i);
  return {Rational(1), m.trace(), e2, m.det()};
}

}  // namespace

TEST_SUITE("mat3") {
  TEST_CASE("word evaluation") {
    RepQ id{{MatQ::identity(), MatQ::identity()}};
    CHECK(word_matrix(id, parse_word("x1 x2^-3 x1^2")) == MatQ::identity());
    RepQ d{{diag(1, 2, Rational(1, 2))}};
    CHECK(word_matrix(d, parse_word("x1^2")) == diag(1, 4, Rational(1, 4)));
    CHECK(word_matrix(d, parse_word("x1^-1")) == diag(1, Rational(1, 2), 2));
    CHECK(word_matrix(d, Word()) == MatQ::identity());
    CHECK(word_matrix(d, Word()).trace() == 3);
    CHECK(word_matrix(d, parse_word("x1")).trace() == Rational(7, 2));
    CHECK(word_matrix(d, parse_word("x1^2")).trace() == Rational(21, 4));
    CHECK_THROWS(word_matrix(d, parse_word("x2")));
  }

  TEST_CASE("evaluation is multiplicative and rotation invariant in trace") {
    RepQ rep = random_rep_exact(3, 4);
    for (std::uint64_t s = 0; s < 50; ++s) {
      Word u = random_word(s, 3, 6, 3), v = random_word(s + 1000, 3, 6, 3);
      CHECK(word_matrix(rep, u * v) == word_matrix(rep, u) * word_matrix(rep, v));
      for (std::size_t k = 0; k < u.size(); ++k)
        CHECK(word_matrix(rep, u.rotated(k)).trace() == word_matrix(rep, u).trace());
    }
  }

  TEST_CASE("exact sampler") {
    MatQ one = random_sl3_exact(3, 1, 1);
    CHECK(one.det() == 1);
    for (std::uint64_t s = 0; s < 100; ++s) {
      MatQ m = random_sl3_exact(s);
      CHECK(m.det() == 1);
      for (const auto& e : m.a) CHECK(e.get_den() == 1);
    }
    CHECK(random_sl3_exact(17) == random_sl3_exact(17));
    CHECK(shear(0, 1, 2).det() == 1);
  }

  TEST_CASE("numeric sampler") {
    for (std::uint64_t s = 0; s < 100; ++s) {
      MatC m = random_sl3_numeric(s);
      CHECK(std::abs(m.det() - Complex(1)) <= 1e-12);
      MatC inv = inverse(m);
      MatC cayley = m * m - m.trace() * m + inv.trace() * MatC::identity() - inv;
      double scale = 1;
      for (const auto& e : (m * m).a) scale = std::max(scale, std::abs(e));
      for (const auto& e : inv.a) scale = std::max(scale, std::abs(e));
      for (const auto& e : cayley.a) CHECK(std::abs(e) <= 1e-9 * scale);
    }
    CHECK(random_sl3_numeric(8) == random_sl3_numeric(8));
  }

  TEST_CASE("Cayley-Hamilton exactly on exact samples") {
    for (std::uint64_t s = 0; s < 100; ++s) {
      MatQ m = random_sl3_exact(s);
      MatQ inv = inverse(m);
      CHECK(inv * m == MatQ::identity());
      CHECK(m * m - m.trace() * m + inv.trace() * MatQ::identity() - inv == MatQ());
    }
  }

  TEST_CASE("characteristic coefficients") {
    auto c = char_coefficients(diag(1, 2, 3));
    CHECK(c[2] == 11);
    CHECK(char_coefficients(MatQ::identity()) == std::array<Rational, 4>{1, 3, 3, 1});
    auto e = elementary_from_power_traces<Rational>({6, 14, 36});
    CHECK(e == std::vector<Rational>{1, 6, 11, 6});
    for (std::uint64_t s = 0; s < 100; ++s) {
      MatQ m = random_integer_matrix(s);
      CHECK(char_coefficients(m) == minors_oracle(m));
    }
  }

  TEST_CASE("cube trace polynomial") {
    CHECK(p_poly(MatQ::identity()) == 3);
    for (std::uint64_t s = 0; s < 50; ++s) {
      MatQ x = random_sl3_exact(s);
      CHECK(p_poly(x) == (x * x * x).trace());
      MatQ g = random_integer_matrix(s + 500);
      CHECK(p_poly(g) == (g * g * g).trace() - 3 * (g.det() - 1));
    }
  }

  TEST_CASE("inverse rejects singular matrices") {
    CHECK_THROWS_AS(inverse(MatQ()), SingularMatrix);
    CHECK_THROWS_AS(inverse(MatC()), SingularMatrix);
  }

  TEST_CASE("representation files") {
    RepQ rep = random_rep_exact(2, 1);
    auto back = representation_from_json(representation_to_json(rep));
    CHECK(back.field == Field::Rational);
    CHECK(back.exact.mats == rep.mats);
    RepC num = random_rep_numeric(2, 1);
    auto nb = representation_from_json(representation_to_json(num));
    CHECK(nb.field == Field::Complex);
    CHECK(nb.rank() == 2);
    auto j = nlohmann::json::parse(
        R"({"r":1,"field":"rational","matrices":[[["1/2",0,0],[0,2,0],[0,0,1]]]})");
    CHECK(representation_from_json(j).exact.mats[0] == diag(Rational(1, 2), 2, 1));
    j["matrices"][0][0][0] = "1/3";
    CHECK_THROWS_AS(representation_from_json(j), RepresentationError);
    j["matrices"][0][0][0] = "x";
    CHECK_THROWS_AS(representation_from_json(j), RepresentationError);
    CHECK_THROWS_AS(representation_from_json(nlohmann::json::parse(R"({"r":2,"field":"rational","matrices":[]})")),
                    RepresentationError);
    CHECK_THROWS_AS(representation_from_json(nlohmann::json::parse(R"({"r":1,"field":"real","matrices":[]})")),
                    RepresentationError);
  }

  TEST_CASE("seed derivation separates streams") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
  }
}

#include "doctest.h"
#include "sl3/identities.hpp"
#include "sl3/reducer.hpp"
#include "support.hpp"

using namespace sl3;
using sl3::testing::direct_value;
using sl3::testing::same_function;

namespace {

Word x(int i, int e = 1) { return Word::generator(i, e); }
TracePolynomial T(const Word& w) { return TracePolynomial::trace(w); }
MatrixExpression M(const Word& w) { return MatrixExpression::word(w); }

int max_weight(const TracePolynomial& p) { return p.max_symbol_weight(); }

int weight_of(const Word& w) { return weighted_length(w); }

}  // namespace

TEST_SUITE("identities") {
  TEST_CASE("every identity holds exactly and numerically") {
    for (IdentityId id : all_identity_ids()) {
      IdentityCase c = build_identity(id);
      CAPTURE(c.name);
      IdentityReport exact = verify_identity(c, EvalMode::Exact, 20, 7);
      CHECK(exact.passed);
      CHECK(exact.max_residual == 0);
      CHECK(exact.trial_seeds.size() == 20);
      IdentityReport num = verify_identity(c, EvalMode::Numeric, 20, 7);
      CHECK(num.passed);
      CHECK(num.max_residual <= kNumericTolerance);
    }
  }

  TEST_CASE("identity names round trip") {
    for (IdentityId id : all_identity_ids()) CHECK(identity_from_name(identity_name(id)) == id);
    CHECK_THROWS(identity_from_name("Eq9"));
    CHECK(all_identity_ids().size() == 20);
  }

  TEST_CASE("mutated relation fails on the first trial") {
    IdentityCase c = rank2sum();
    c.rhs = c.rhs - Rational(2) * T(x(1) * x(2));
    IdentityReport rep = verify_identity(c, EvalMode::Exact, 10, 3);
    CHECK_FALSE(rep.passed);
    CHECK(rep.failed_trial == 0);
    CHECK_THROWS(verify_identity(rank2sum(), EvalMode::Exact, 0, 1));
  }

  TEST_CASE("printed two-generator relation") {
    IdentityCase c = rank2sum();
    RepQ id{{MatQ::identity(), MatQ::identity()}};
    TraceEvaluator<Rational> ev(id);
    CHECK(ev(c.lhs) == 3);
    CHECK(ev(c.rhs) == 3);
    CHECK(c.rhs.size() == 11);
    IdentityReport num = verify_identity(c, EvalMode::Numeric, 50, 5);
    CHECK(num.passed);
  }

  TEST_CASE("pol as a matrix identity") {
    MatrixExpression one = MatrixExpression::identity();
    RepQ id{{MatQ::identity()}};
    TraceEvaluator<Rational> ev(id);
    CHECK(ev(pol(one, one)) == MatQ::scalar(3));
    CHECK(ev(pol(one, one).trace()) == 9);
    for (std::uint64_t s = 0; s < 20; ++s) {
      RepQ rep = random_rep_exact(2, s);
      TraceEvaluator<Rational> e(rep);
      MatQ X = rep.mats[0], Y = rep.mats[1];
      CHECK(e(pol(x(1), x(2))) == Y * X * X + X * X * Y + X * Y * X);
      CHECK(e(pol(x(1), x(1))) == Rational(3) * X * X * X);
    }
  }

  TEST_CASE("pol2 and pol3") {
    MatrixExpression one = MatrixExpression::identity();
    RepQ id{{MatQ::identity()}};
    TraceEvaluator<Rational> ev(id);
    CHECK(ev(pol2(one, one, one)) == MatQ::scalar(3));
    CHECK(ev(pol3(one, one, one, one, one)) == MatQ::scalar(6));
    for (std::uint64_t s = 0; s < 10; ++s) {
      RepQ rep = random_rep_exact(5, s);
      TraceEvaluator<Rational> e(rep);
      const auto& m = rep.mats;
      CHECK(e(pol2(M(x(1)), M(x(2)), M(x(3)))) == Rational(3) * m[0] * m[0] * m[2] * m[1] * m[1]);
      CHECK(e(prepol3(M(x(1)), M(x(2)), M(x(3)), M(x(4)))) ==
            Rational(3) * m[0] * m[0] * m[3] * (m[1] * m[2] + m[2] * m[1]));
      CHECK(e(pol3(M(x(1)), M(x(2)), M(x(3)), M(x(4)), M(x(5)))) ==
            Rational(6) * m[0] * m[0] * m[4] * m[3] * m[1] * m[2]);
    }
  }

  TEST_CASE("Eq2 rewrite") {
    TracePolynomial sq = eq2_rewrite(Word(), Word(), Word(), {1, 1});
    CHECK(same_function(sq, T(x(1, 2)), 1, 20, 1));
    TracePolynomial xyx = eq2_rewrite(Word(), x(2), Word(), {1, 1});
    CHECK(same_function(xyx, T(x(1) * x(2) * x(1)), 2, 20, 2));
    TracePolynomial expected = T(x(2) * x(1, -1)) + T(x(1)) * T(x(1) * x(2)) - T(x(1, -1)) * T(x(2));
    CHECK(reduce_to_basis(xyx) == expected);
    TracePolynomial inv = eq2_rewrite(x(3), x(2) * x(4), x(2, -1), {1, -1});
    CHECK(same_function(inv, T(x(3) * x(1, -1) * x(2) * x(4) * x(1, -1) * x(2, -1)), 4, 20, 3));
    RepQ id{{MatQ::identity(), MatQ::identity()}};
    TraceEvaluator<Rational> ev(id);
    CHECK(ev(xyx) == 3);
  }

  TEST_CASE("Eq3 swap") {
    TracePolynomial r = eq3_swap(x(2), x(3), {1, 1});
    TracePolynomial lhs = T(x(2) * x(1) * x(3) * x(1, -1)) + T(x(3) * x(1) * x(2) * x(1, -1));
    CHECK(same_function(r, lhs, 3, 20, 4));
    TracePolynomial same = eq3_swap(x(2), x(2), {1, 1});
    CHECK(same_function(same, Rational(2) * T(x(2) * x(1) * x(2) * x(1, -1)), 2, 20, 5));
    RepQ id{{MatQ::identity(), MatQ::identity(), MatQ::identity()}};
    TraceEvaluator<Rational> ev(id);
    CHECK(ev(r) == 6);
  }

  TEST_CASE("cyclic sum") {
    TraceRelation id = cyclic_sum(Word(), Word(), Word(), Word());
    RepQ one{{MatQ::identity()}};
    TraceEvaluator<Rational> ev(one);
    CHECK(ev(id.lhs) == 18);
    CHECK(ev(id.rhs) == 18);
    TraceRelation plain = cyclic_sum(x(1), x(2), x(3), x(4));
    CHECK(plain.lhs.size() == 6);
    CHECK(same_function(plain.lhs, plain.rhs, 4, 20, 6));
    TraceRelation inv = cyclic_sum(x(1, -1), x(2), x(3), x(4));
    CHECK(same_function(inv.lhs, inv.rhs, 4, 20, 7));
  }

  TEST_CASE("cyclic sum respects the trace degree bound") {
    for (std::uint64_t s = 0; s < 25; ++s) {
      Word w = random_word(s, 4, 3, 2), a = random_word(s + 100, 4, 2, 1),
           b = random_word(s + 200, 4, 2, 1), c = random_word(s + 300, 4, 2, 1);
      TraceRelation rel = cyclic_sum(w, a, b, c);
      CHECK(max_weight(rel.rhs) <= weight_of(w) + weight_of(a) + weight_of(b) + weight_of(c) - 1);
    }
  }

  TEST_CASE("fundamental relation") {
    const TraceRelation& f = fundamental_template();
    CHECK(f.lhs.size() == 4);
    CHECK(max_weight(f.rhs) <= 5);
    TraceRelation trivial = fundamental_relation(Word(), Word(), Word(), Word(), Word(), Word());
    RepQ one{{MatQ::identity()}};
    TraceEvaluator<Rational> ev(one);
    CHECK(ev(trivial.lhs) == 36);
    CHECK(ev(trivial.rhs) == 36);
    CHECK(same_function(f.lhs, f.rhs, 6, 10, 8));
    for (std::uint64_t s = 0; s < 10; ++s) {
      std::vector<Word> ws;
      for (int k = 0; k < 6; ++k) ws.push_back(x(1 + static_cast<int>(derive_seed(s, k) % 6)));
      TraceRelation rel = fundamental_relation(ws[0], ws[1], ws[2], ws[3], ws[4], ws[5]);
      for (Sym sym : rel.rhs.symbols()) CHECK(unit_count(key_of(sym).word()) < 6);
      CHECK(same_function(rel.lhs, rel.rhs, 6, 3, s));
    }
  }

  TEST_CASE("five-letter relation matches the printed form") {
    TracePolynomial lhs = parse_trace_polynomial(
        "3*t(1,2,3,4,5) + 3*t(1,2,5,3,4) + 3*t(1,5,2,3,4) + 3*t(1,3,4,5,2) + 3*t(1,5,3,4,2)"
        " + 3*t(1,3,4,2,5)");
    TracePolynomial rhs = parse_trace_polynomial(
        "3*t(1)*t(2)*t(5)*t(3,4) - 3*t(5)*t(1,2)*t(3,4) - 3*t(2)*t(1,5)*t(3,4)"
        " - 3*t(1)*t(2,5)*t(3,4) - 3*t(2)*t(5)*t(1,3,4) + 3*t(2,5)*t(1,3,4)"
        " - 3*t(1)*t(5)*t(2,3,4) + 3*t(1,5)*t(2,3,4) - 4*t(1,2)*t(3,4,5)"
        " + 3*t(3,4)*t(5,1,2) + 3*t(3,4)*t(5,2,1) - 3*t(1)*t(2)*t(5,3,4)"
        " + 7*t(1,2)*t(5,3,4) + 3*t(5)*t(1,2,3,4) - 2*t(2)*t(1,3,4,5)"
        " + 3*t(2)*t(1,5,3,4) + 3*t(5)*t(2,1,3,4) - 2*t(1)*t(2,3,4,5)"
        " + 3*t(1)*t(2,5,3,4) + 5*t(2)*t(5,1,3,4) + 5*t(1)*t(5,2,3,4)");
    CHECK(same_function(lhs, rhs, 5, 10, 9));
    IdentityCase built = build_identity(IdentityId::FundFive);
    CHECK(Rational(3) * built.lhs == lhs);
    CHECK(reduce_to_minimal(reduce_to_basis(Rational(3) * built.rhs - rhs), 5).is_zero());
  }

  TEST_CASE("power expansion") {
    for (int e : {-4, -3, -2, -1, 2, 3, 5}) {
      PowerExpansion pe = power_expansion(1, e);
      for (std::uint64_t s = 0; s < 5; ++s) {
        RepQ rep = random_rep_exact(1, s);
        TraceEvaluator<Rational> ev(rep);
        MatQ X = rep.mats[0];
        MatQ lhs = word_matrix(rep, x(1, e));
        MatQ rhs = ev(pe.identity) * MatQ::identity() + ev(pe.positive) * X +
                   ev(pe.negative) * inverse(X);
        CHECK(lhs == rhs);
      }
    }
    TracePolynomial flat = flatten_all_powers(T(x(1, 3) * x(2, -2) * x(3)));
    for (Sym s : flat.symbols())
      for (const Letter& l : key_of(s).word().letters()) CHECK(std::abs(l.exp) == 1);
    CHECK(same_function(flat, T(x(1, 3) * x(2, -2) * x(3)), 3, 10, 10));
  }

  TEST_CASE("cube trace formula on exact samples") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      RepQ rep = random_rep_exact(1, s);
      CHECK(p_poly(rep.mats[0]) == word_matrix(rep, x(1, 3)).trace());
    }
  }
}

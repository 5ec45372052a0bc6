#include <algorithm>
#include <map>

#include "doctest.h"
#include "sl3/generators.hpp"
#include "sl3/identities.hpp"
#include "sl3/reducer.hpp"
#include "sl3/relmat.hpp"
#include "support.hpp"

using namespace sl3;
using sl3::testing::same_function;
using sl3::testing::traces_to;

namespace {

Word w(const char* s) { return parse_word(s); }
TracePolynomial t(const char* s) { return TracePolynomial::trace(parse_word(s)); }
CyclicKey key(const char* tnote) { return canonical_cyclic_key(parse_t_notation(tnote)); }

}  // namespace

TEST_SUITE("reducer") {
  TEST_CASE("small words") {
    CHECK(reduce_to_basis(w("x1")) == t("x1"));
    CHECK(reduce_to_basis(w("x1^2")) == t("x1") * t("x1") - Rational(2) * t("x1^-1"));
    CHECK(reduce_to_basis(w("x1 x2 x1")) ==
          t("x2 x1^-1") + t("x1") * t("x1 x2") - t("x1^-1") * t("x2"));
    CHECK(reduce_to_basis(Word()) == TracePolynomial(3));
    CHECK(reduce_to_basis(w("x1 x2 x1^-1")) == t("x2"));
  }

  TEST_CASE("basis output is in generator form") {
    for (std::uint64_t s = 0; s < 60; ++s) {
      Word word = random_word(s, 4, 9, 3);
      TracePolynomial p = reduce_to_basis(word);
      for (Sym sym : p.symbols()) {
        CHECK(is_basis_key(key_of(sym)));
        CHECK(classify(key_of(sym)).has_value());
      }
      CHECK(traces_to(p, word, 4, 5, s));
    }
  }

  TEST_CASE("length nine word in four letters") {
    Word word = w("x4^-3 x1 x3^-1 x4^2 x2 x3");
    CHECK(unit_count(word) == 9);
    TracePolynomial p = reduce_to_basis(word);
    CHECK(traces_to(p, word, 4, 20, 99));
    CHECK(traces_to(reduce_to_minimal(p, 4), word, 4, 20, 98));
  }

  TEST_CASE("long positive words use the seven-block rules") {
    for (const char* s : {"x1 x2 x3 x4 x5 x6 x1", "x1 x2 x3 x4 x5 x6 x1 x2",
                          "x1 x3 x2 x3^-1 x2^-1", "x1^-1 x2^-1 x3^-1 x4^-1"}) {
      CAPTURE(s);
      Word word = w(s);
      TracePolynomial p = reduce_to_basis(word);
      CHECK(p.max_symbol_weight() <= 6);
      CHECK(traces_to(p, word, word.max_index(), 5, 17));
    }
  }

  TEST_CASE("seven distinct letters") {
    Word word = w("x1 x2 x3 x4 x5 x6 x7");
    TracePolynomial p = reduce_to_basis(word);
    CHECK(p.max_symbol_weight() <= 6);
    CHECK(traces_to(p, word, 7, 3, 23));
  }

  TEST_CASE("generator types") {
    CHECK(classify(key("t(1)")) == GeneratorType::X);
    CHECK(classify(key("t(-1)")) == GeneratorType::Xinv);
    CHECK(classify(key("t(1,2,-1,-2)")) == GeneratorType::XYXinvYinv);
    CHECK(classify(key("t(1,2,3,-2)")) == GeneratorType::XYZYinv);
    CHECK(classify(key("t(1,2,3,4,-3)")) == GeneratorType::WXYZYinv);
    CHECK(classify(key("t(1,2,3,4,5,6)")) == GeneratorType::UVWXYZ);
    CHECK(classify(key("t(-1,-2,-3)")) == GeneratorType::XinvYinvZinv);
    CHECK_FALSE(classify(key("t(1,1,2)")).has_value());
    CHECK_FALSE(classify(key("t(1,2,3,4,5,6,7)")).has_value());
    CHECK_FALSE(is_basis_key(key("t(1,-2,3,-4)")));
    CHECK(all_generator_types().size() == kGeneratorTypeCount);
    int total = 0;
    for (GeneratorType g : all_generator_types()) {
      CHECK(type_weight(g) <= 6);
      CHECK(type_letter_count(g) >= 1);
      total += type_letter_count(g);
    }
    CHECK(total > 0);
    GeneratorInstance inst = make_instance(key("t(2,5,-3)"));
    CHECK(inst.type == GeneratorType::XYZinv);
    CHECK(inst.letters == std::vector<int>{2, 3, 5});
  }

  TEST_CASE("orientation keeps the smaller key") {
    TracePolynomial p = reduce_to_basis(w("x1 x3 x2 x3^-1"));
    TracePolynomial q = reduce_to_basis(w("x1 x3^-1 x2 x3"));
    CHECK(p.size() + q.size() >= 2);
    CHECK(traces_to(p, w("x1 x3 x2 x3^-1"), 3, 10, 1));
    CHECK(traces_to(q, w("x1 x3^-1 x2 x3"), 3, 10, 2));
    int basis_count = is_basis_key(canonical_cyclic_key(w("x1 x3 x2 x3^-1"))) +
                      is_basis_key(canonical_cyclic_key(w("x1 x3^-1 x2 x3")));
    CHECK(basis_count == 1);
  }

  TEST_CASE("two generators") {
    auto rules = tier2_rules(2);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].removed.key == key("t(2,1,-2,-1)"));
    CHECK(rules[0].replacement == rank2sum().rhs);
    TracePolynomial comm = reduce_to_minimal(reduce_to_basis(t("x2 x1 x2^-1 x1^-1")), 2);
    CHECK(comm == rank2sum().rhs);
    CHECK(reduce_to_minimal(t("x1 x2 x1^-1 x2^-1"), 2) == t("x1 x2 x1^-1 x2^-1"));
  }

  TEST_CASE("tier two rules pass the evaluation oracle") {
    for (int r = 1; r <= 4; ++r) {
      for (const RewriteRule& rule : tier2_rules(r)) {
        CAPTURE(rule.removed.key.str());
        CHECK(same_function(TracePolynomial::symbol(intern(rule.removed.key)), rule.replacement, r,
                            3, static_cast<std::uint64_t>(r)));
      }
    }
  }

  TEST_CASE("rule counts complement the minimal counts") {
    for (int r = 1; r <= 5; ++r) {
      std::size_t basis_total = 0;
      for (const auto& pattern : Reducer::shared().patterns()) {
        int k = static_cast<int>(pattern.size());
        if (k > r) continue;
        basis_total += Reducer::shared().degree_class(pattern).symbols.size() *
                       binomial(r, k).get_ui();
      }
      CHECK(basis_total - tier2_rules(r).size() == count_formula(r).get_ui());
    }
  }

  TEST_CASE("printed kept sets") {
    const DegreeClass& five = Reducer::shared().degree_class({1, 1, 1, 1, 1});
    CHECK(five.printed_choice);
    CHECK(five.kept.size() == 12);
    CHECK(five.removed.size() == 12);
    std::vector<CyclicKey> kept;
    for (Sym s : five.kept) kept.push_back(key_of(s));
    for (const auto& t : five_letter_kept())
      CHECK(std::find(kept.begin(), kept.end(), key(t.c_str())) != kept.end());
    const DegreeClass& six = Reducer::shared().degree_class({1, 1, 1, 1, 1, 1});
    CHECK(six.kept.size() == 15);
    CHECK(six.removed.size() == 105);
    CHECK(six.relation_sources.size() == 105);
  }

  TEST_CASE("minimal reduction") {
    for (int r = 1; r <= 4; ++r) {
      for (const auto& g : enumerate_minimal_set(r)) {
        TracePolynomial s = TracePolynomial::symbol(intern(g.key));
        CHECK(reduce_to_minimal(s, r) == s);
        CHECK(Reducer::shared().is_minimal_key(g.key));
      }
    }
    for (std::uint64_t s = 0; s < 40; ++s) {
      int r = 1 + static_cast<int>(s % 5);
      Word word = random_word(derive_seed(s, 0), r, 8, 3);
      TracePolynomial p = reduce_to_minimal(reduce_to_basis(word), r);
      for (Sym sym : p.symbols()) CHECK(Reducer::shared().is_minimal_key(key_of(sym)));
      CHECK(reduce_to_minimal(p, r) == p);
      CHECK(traces_to(p, word, r, 5, s));
    }
  }

  TEST_CASE("minimal reduction rejects bad input") {
    CHECK_THROWS_AS(reduce_to_minimal(t("x1^2"), 1), std::logic_error);
    CHECK_THROWS_AS(reduce_to_minimal(t("x3"), 2), std::invalid_argument);
  }

  TEST_CASE("relabel") {
    std::map<int, int> m{{1, 3}, {3, 1}};
    CHECK(relabel(w("x1 x2^-1 x3"), m) == w("x3 x2^-1 x1"));
    CHECK(relabel(t("x1 x2") * t("x3"), m) == t("x3 x2") * t("x1"));
  }

  TEST_CASE("degree classes") {
    const auto& patterns = Reducer::shared().patterns();
    CHECK(std::find(patterns.begin(), patterns.end(), std::vector<int>{3, 3}) != patterns.end());
    LetterClass c = letter_class(key("t(2,5,-2,-5)"));
    CHECK(c.pattern == std::vector<int>{3, 3});
    CHECK(c.letters == std::vector<int>{2, 5});
    CHECK_THROWS(Reducer::shared().degree_class({2, 2, 2, 2}));
  }
}

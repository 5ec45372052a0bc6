#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "sl3/generators.hpp"

using namespace sl3;

namespace {

// Closed form evaluated in rationals, independently of the library.
mpz_class closed_form(int r) {
  mpq_class x = r;
  mpq_class v = x / 240 * (396 + 65 * x * x - 5 * x * x * x + 19 * x * x * x * x + 5 * x * x * x * x * x);
  v.canonicalize();
  REQUIRE(v.get_den() == 1);
  return v.get_num();
}

mpz_class choose(int n, int k) {
  mpz_class c = 1;
  if (k > n) return 0;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

TEST_SUITE("generators") {
  TEST_CASE("closed form and binomial sum agree") {
    CHECK(count_formula(1) == 2);
    CHECK(count_formula(2) == 9);
    CHECK(count_formula(3) == 45);
    CHECK(count_formula(6) == 1629);
    for (int r = 1; r <= 10; ++r) {
      CAPTURE(r);
      mpz_class sum = 2 * choose(r, 1) + 5 * choose(r, 2) + 24 * choose(r, 3) + 51 * choose(r, 4) +
                      47 * choose(r, 5) + 15 * choose(r, 6);
      CHECK(count_formula(r) == sum);
      CHECK(count_formula(r) == closed_form(r));
      CHECK(count_binomial_sum(r) == sum);
      CHECK(type_counts(r).total() == sum);
      CHECK(binomial(r, 3) == choose(r, 3));
    }
    CHECK(binomial(2, 5) == 0);
  }

  TEST_CASE("type count table") {
    auto row = [](const TypeCountTable& t, GeneratorType g) {
      for (const auto& x : t.rows)
        if (x.type == g) return x;
      FAIL("missing row");
      return TypeCountRow{};
    };
    CHECK(row(type_counts(3), GeneratorType::XYZ).count == 2);
    CHECK(row(type_counts(4), GeneratorType::WXYZ).count == 5);
    TypeCountTable two = type_counts(2);
    CHECK(two.rows.size() == 19);
    for (const auto& x : two.rows)
      if (x.letters >= 3) CHECK(x.count == 0);
    std::vector<int> multipliers;
    for (GeneratorType g : table_order()) multipliers.push_back(table_multiplier(g));
    CHECK(multipliers ==
          std::vector<int>{1, 1, 1, 2, 1, 1, 2, 6, 3, 6, 6, 1, 5, 20, 18, 8, 12, 35, 15});
    std::map<int, int> by_letters;
    for (GeneratorType g : table_order()) by_letters[type_letter_count(g)] += table_multiplier(g);
    CHECK(by_letters == std::map<int, int>{{1, 2}, {2, 5}, {3, 24}, {4, 51}, {5, 47}, {6, 15}});
  }

  TEST_CASE("rank one and two generating sets") {
    std::vector<std::string> one;
    for (const auto& g : enumerate_minimal_set(1)) one.push_back(g.key.str());
    CHECK(one == std::vector<std::string>{"t(1)", "t(-1)"});
    std::vector<std::string> two;
    for (const auto& g : enumerate_minimal_set(2)) two.push_back(g.key.str());
    CHECK(two == std::vector<std::string>{"t(1)", "t(2)", "t(-1)", "t(-2)", "t(1,2)", "t(1,-2)",
                                          "t(-1,2)", "t(-1,-2)", "t(1,2,-1,-2)"});
    CHECK_THROWS(enumerate_minimal_set(0));
  }

  TEST_CASE("generating sets are distinct, typed and ordered") {
    for (int r = 1; r <= 6; ++r) {
      CAPTURE(r);
      auto set = enumerate_minimal_set(r);
      CHECK(set.size() == count_formula(r).get_ui());
      std::set<CyclicKey> keys;
      std::map<GeneratorType, mpz_class> per_type;
      for (const auto& g : set) {
        keys.insert(g.key);
        CHECK(classify(g.key) == g.type);
        CHECK(canonical_cyclic_key(g.word) == g.key);
        CHECK(static_cast<int>(g.letters.size()) == type_letter_count(g.type));
        CHECK(g.key.weight() == type_weight(g.type));
        CHECK(std::is_sorted(g.letters.begin(), g.letters.end()));
        CHECK(g.letters.back() <= r);
        per_type[g.type] += 1;
      }
      CHECK(keys.size() == set.size());
      for (const auto& row : type_counts(r).rows) CHECK(per_type[row.type] == row.count);
      for (std::size_t i = 1; i < set.size(); ++i) {
        auto a = std::make_pair(set[i - 1].key.weight(), set[i - 1].letters.size());
        auto b = std::make_pair(set[i].key.weight(), set[i].letters.size());
        CHECK(a <= b);
      }
    }
  }

  TEST_CASE("instance counts factor through first occurrences") {
    for (int r = 1; r <= 6; ++r) {
      std::map<std::pair<int, int>, mpz_class> total, first;
      for (const auto& g : enumerate_minimal_set(r)) {
        auto cls = std::make_pair(g.key.weight(), static_cast<int>(g.letters.size()));
        total[cls] += 1;
        bool leading = true;
        for (std::size_t i = 0; i < g.letters.size(); ++i)
          leading = leading && g.letters[i] == static_cast<int>(i) + 1;
        if (leading) first[cls] += 1;
      }
      for (const auto& [cls, n] : total) CHECK(n == first[cls] * choose(r, cls.second));
    }
  }

  TEST_CASE("irreducible dimensions") {
    CHECK(irrep_dimension({{2, 2}}, 2) == 1);
    CHECK(irrep_dimension({{3, 3, 0}}, 3) == 10);
    CHECK(irrep_dimension({{1, 1, 1, 1, 1}}, 5) == 1);
    CHECK(irrep_dimension({{1}}, 4) == 4);
    CHECK(irrep_dimension({{1, 1, 1}}, 2) == 0);
    CHECK_THROWS(irrep_dimension({{1, 2}}, 3));
    CHECK(weight_list().size() == 11);
  }

  TEST_CASE("dimension cross-check") {
    std::vector<long> totals;
    for (int r = 1; r <= 6; ++r) {
      DimensionReport rep = dimension_crosscheck(r);
      CHECK(rep.passed);
      CHECK(rep.irrep_total - r == count_formula(r));
      totals.push_back(rep.irrep_total.get_si());
    }
    CHECK(totals[0] == 3);
    CHECK(totals[1] == 11);
    CHECK(totals[2] == 48);
    CHECK_THROWS(dimension_crosscheck(7));
  }
}

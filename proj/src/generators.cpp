#include "sl3/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace sl3 {

mpz_class binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

mpz_class count_formula(int r) {
  if (r < 1) throw std::invalid_argument("rank must be at least 1");
  mpz_class R = r;
  mpz_class poly = 396 + 65 * R * R - 5 * R * R * R + 19 * R * R * R * R + 5 * R * R * R * R * R;
  mpz_class num = R * poly;
  if (num % 240 != 0) throw std::logic_error("count formula is not integral");
  return num / 240;
}

mpz_class count_binomial_sum(int r) {
  static const int coeff[] = {2, 5, 24, 51, 47, 15};
  mpz_class s = 0;
  for (int y = 1; y <= 6; ++y) s += coeff[y - 1] * binomial(r, y);
  return s;
}

const std::vector<GeneratorType>& table_order() {
  using G = GeneratorType;
  static const std::vector<G> order = {
      G::X,          G::Xinv,       G::XY,           G::XYinv,      G::XinvYinv,
      G::XYXinvYinv, G::XYZ,        G::XYZinv,       G::XYZYinv,    G::XYinvZinv,
      G::XYZinvYinv, G::XinvYinvZinv, G::WXYZ,       G::WXYZinv,    G::WXYinvZinv,
      G::WXYZYinv,   G::VWXYZ,      G::VWXYZinv,     G::UVWXYZ};
  return order;
}

int table_multiplier(GeneratorType t) {
  static const int m[] = {1, 1, 1, 2, 1, 1, 2, 6, 3, 6, 6, 1, 5, 20, 18, 8, 12, 35, 15};
  const auto& order = table_order();
  auto it = std::find(order.begin(), order.end(), t);
  return m[it - order.begin()];
}

namespace {

int table_row(GeneratorType t) {
  const auto& order = table_order();
  return static_cast<int>(std::find(order.begin(), order.end(), t) - order.begin());
}

}  // namespace

mpz_class TypeCountTable::total() const {
  mpz_class s = 0;
  for (const auto& row : rows) s += row.count;
  return s;
}

TypeCountTable type_counts(int r) {
  if (r < 1) throw std::invalid_argument("rank must be at least 1");
  TypeCountTable t;
  t.r = r;
  for (GeneratorType g : table_order()) {
    TypeCountRow row;
    row.type = g;
    row.multiplier = table_multiplier(g);
    row.letters = type_letter_count(g);
    row.count = row.multiplier * binomial(r, row.letters);
    t.rows.push_back(row);
  }
  return t;
}

std::vector<GeneratorInstance> enumerate_minimal_set(int r) {
  if (r < 1) throw std::invalid_argument("rank must be at least 1");
  Reducer& red = Reducer::shared();
  std::vector<GeneratorInstance> out;
  for (const auto& pattern : red.patterns()) {
    int k = static_cast<int>(pattern.size());
    if (k > r) continue;
    const DegreeClass& cls = red.degree_class(pattern);
    std::vector<bool> mask(r, false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
      std::map<int, int> m;
      int j = 0;
      for (int i = 0; i < r; ++i)
        if (mask[i]) m[++j] = i + 1;
      for (Sym s : cls.kept)
        out.push_back(make_instance(canonical_cyclic_key(relabel(key_of(s).word(), m))));
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  std::sort(out.begin(), out.end(), [](const GeneratorInstance& a, const GeneratorInstance& b) {
    auto rank = [](const GeneratorInstance& g) {
      return std::make_tuple(g.key.weight(), g.letters.size(), table_row(g.type));
    };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    if (a.letters != b.letters) return a.letters < b.letters;
    return a.key < b.key;
  });
  return out;
}

std::string Partition::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + ")";
}

const std::vector<Partition>& weight_list() {
  static const std::vector<Partition> w = {
      {{1}},          {{2}},       {{1, 1, 1}}, {{3}},    {{2, 2}},       {{2, 1, 1}},
      {{1, 1, 1, 1, 1}}, {{3, 1, 1}}, {{2, 2, 1}}, {{3, 3}}, {{3, 1, 1, 1}}};
  return w;
}

mpz_class irrep_dimension(const Partition& p, int r) {
  if (r < 1) throw std::invalid_argument("rank must be at least 1");
  for (std::size_t i = 1; i < p.parts.size(); ++i)
    if (p.parts[i] > p.parts[i - 1] || p.parts[i] < 0)
      throw std::invalid_argument("partition parts must be weakly decreasing and non-negative");
  std::vector<int> l = p.parts;
  while (!l.empty() && l.back() == 0) l.pop_back();
  if (static_cast<int>(l.size()) > r) return 0;
  l.resize(r, 0);
  mpq_class d = 1;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) d *= mpq_class(l[i] - l[j] + j - i, j - i);
  d.canonicalize();
  if (d.get_den() != 1) throw std::runtime_error("non-integral dimension for " + p.str());
  return d.get_num();
}

DimensionReport dimension_crosscheck(int r) {
  if (r < 1 || r > 6) throw std::invalid_argument("dimension cross-check covers r = 1..6");
  DimensionReport rep;
  rep.r = r;
  rep.irrep_total = 0;
  for (const auto& p : weight_list()) rep.irrep_total += irrep_dimension(p, r);
  rep.expected = count_formula(r);
  rep.passed = rep.irrep_total - r == rep.expected;
  rep.message = "r=" + std::to_string(r) + ": irreps " + rep.irrep_total.get_str() + " - " +
                std::to_string(r) + (rep.passed ? " = " : " != ") + rep.expected.get_str();
  return rep;
}

}  // namespace sl3

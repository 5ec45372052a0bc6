#include "sl3/relmat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sl3/reducer.hpp"

namespace sl3 {

namespace {

Word x(int i, int e = 1) { return Word::generator(i, e); }

using Cycles = std::vector<std::vector<int>>;

std::string cycles_text(const Cycles& cs) {
  if (cs.empty()) return "(1)";
  std::string s;
  for (const auto& c : cs) {
    s += "(";
    for (int i : c) s += std::to_string(i);
    s += ")";
  }
  return s;
}

std::map<int, Word> permutation_map(const Cycles& cs, PermutationConvention conv) {
  std::map<int, Word> m;
  for (const auto& c : cs)
    for (std::size_t k = 0; k < c.size(); ++k) {
      int from = c[k], to = c[(k + 1) % c.size()];
      if (conv == PermutationConvention::Images)
        m[from] = x(to);
      else
        m[to] = x(from);
    }
  return m;
}

TraceRelation substitute(const TraceRelation& r, const std::map<int, Word>& m) {
  return {r.lhs.substitute(m), r.rhs.substitute(m)};
}

TracePolynomial reduced_difference(const TraceRelation& r) {
  Reducer& red = Reducer::shared();
  return red.reduce_to_basis(r.lhs) - red.reduce_to_basis(r.rhs);
}

std::vector<CyclicKey> keys_of(const std::vector<std::string>& ts) {
  std::vector<CyclicKey> out;
  for (const auto& t : ts) out.push_back(canonical_cyclic_key(parse_t_notation(t)));
  return out;
}

// Coefficients of the top-weight single symbols of q over the given columns.
std::vector<Rational> linear_part(const TracePolynomial& q, const std::vector<CyclicKey>& cols,
                                  const std::string& what) {
  int weight = cols.front().weight();
  std::map<Sym, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[intern(cols[i])] = i;
  std::vector<Rational> row(cols.size());
  for (const auto& [m, c] : q.terms()) {
    if (m.size() != 1 || key_of(m[0]).weight() < weight) continue;
    auto it = index.find(m[0]);
    if (it == index.end())
      throw std::runtime_error(what + " references " + key_of(m[0]).str() +
                               " outside the column set");
    row[it->second] = c;
  }
  return row;
}

// Smallest integer multiple with a positive leading entry; returns the scale.
Rational primitive(const std::vector<Rational>& row, std::vector<mpz_class>& out) {
  mpz_class den = 1;
  for (const auto& v : row)
    if (v != 0) den = lcm(den, mpz_class(v.get_den()));
  mpz_class g = 0;
  for (const auto& v : row) g = gcd(g, mpz_class(v * den));
  out.assign(row.size(), 0);
  if (g == 0) return 0;
  Rational scale = Rational(den) / Rational(g);
  auto lead = std::find_if(row.begin(), row.end(), [](const Rational& v) { return v != 0; });
  if (*lead < 0) scale = -scale;
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = mpz_class(row[i] * scale);
  return scale;
}

const std::vector<Cycles>& fundfive_permutations() {
  static const std::vector<Cycles> p = {
      {}, {{3, 4}}, {{2, 3}}, {{2, 4}}, {{4, 5}}, {{2, 3, 4}}, {{2, 4, 3}}, {{3, 4, 5}}};
  return p;
}

std::vector<std::string> permutation_words(int n, int last) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::string> out;
  do {
    std::string s = "t(";
    for (int i : p) s += std::to_string(i) + ",";
    s += std::to_string(last) + ")";
    out.push_back(s);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Order relation for t(a,b,c,d,-5) + t(a,c,b,d,-5).
TraceRelation order_relation(int a, int b, int c, int d) {
  return fundamental_relation(x(5), x(5), x(a), x(b), x(c), x(d));
}

// (a,b,c,d) of a key t(a,b,c,d,-5).
std::vector<int> positive_run(const CyclicKey& k) {
  const Word& w = k.word();
  std::size_t p = 0;
  while (w[p].exp > 0) ++p;
  Word r = w.rotated((p + 1) % w.size());
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) out.push_back(r[i].index);
  return out;
}

std::vector<NamedRelation> six_in_five_sums() {
  TraceRelation r1 = fundamental_relation(x(1), x(2), x(5), x(3), x(4), x(5));
  TraceRelation r3 = cyclic_sum(x(2) * x(5) * x(3), x(5), x(4), x(1));
  auto perm = [](const TraceRelation& r, const Cycles& c) {
    return substitute(r, permutation_map(c, PermutationConvention::Images));
  };
  return {{"sum r1", r1},
          {"sum r2 = r1 (13)", perm(r1, {{1, 3}})},
          {"sum r3", r3},
          {"sum r4 = r3 (13)", perm(r3, {{1, 3}})},
          {"sum r5 = r3 (24)", perm(r3, {{2, 4}})}};
}

struct SixInFiveRow {
  std::vector<Rational> row;  // over the fixed twelve
  TracePolynomial q;          // == 0 on SL(3)
};

// Projects a relation onto the fixed twelve using the order relations.
SixInFiveRow project_six_in_five(const TraceRelation& r) {
  std::vector<CyclicKey> all = keys_of(permutation_words(4, -5));
  std::vector<CyclicKey> fixed = keys_of(six_in_five_fixed());
  std::set<CyclicKey> fixed_set(fixed.begin(), fixed.end());
  TracePolynomial q = reduced_difference(r);
  std::vector<Rational> full = linear_part(q, all, "six-in-five relation");
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (full[i] == 0 || fixed_set.count(all[i])) continue;
    std::vector<int> p = positive_run(all[i]);
    TracePolynomial o = reduced_difference(order_relation(p[0], p[1], p[2], p[3]));
    Rational c = o.coefficient({intern(all[i])});
    if (c == 0) throw std::logic_error("order relation misses " + all[i].str());
    q -= (full[i] / c) * o;
  }
  SixInFiveRow out;
  out.q = q;
  out.row = linear_part(q, fixed, "projected six-in-five relation");
  std::vector<Rational> check = linear_part(q, all, "projected six-in-five relation");
  for (std::size_t i = 0; i < all.size(); ++i)
    if (check[i] != 0 && !fixed_set.count(all[i]))
      throw std::logic_error("projection left " + all[i].str());
  return out;
}

// Splits q == 0 into lhs = linear part (integer, primitive), rhs = rest.
TraceRelation as_relation(const TracePolynomial& q, const std::vector<CyclicKey>& cols) {
  std::vector<Rational> row = linear_part(q, cols, "relation");
  std::vector<mpz_class> ints;
  Rational scale = primitive(row, ints);
  TraceRelation r;
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (ints[i] != 0) r.lhs += Rational(ints[i]) * TracePolynomial::symbol(intern(cols[i]));
  r.rhs = r.lhs - scale * q;
  return r;
}

}  // namespace

std::string family_name(RelationFamily f) {
  switch (f) {
    case RelationFamily::FiveInFive:
      return "five5";
    case RelationFamily::SixInFive:
      return "six5";
    case RelationFamily::SixInSix:
      return "six6";
  }
  return "";
}

RelationFamily family_from_name(const std::string& name) {
  for (auto f : {RelationFamily::FiveInFive, RelationFamily::SixInFive, RelationFamily::SixInSix})
    if (family_name(f) == name) return f;
  throw std::invalid_argument("unknown family: " + name);
}

std::vector<std::string> five_letter_columns() {
  std::vector<std::string> out;
  std::vector<int> p = {2, 3, 4, 5};
  do {
    std::string s = "t(1";
    for (int i : p) s += "," + std::to_string(i);
    out.push_back(s + ")");
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<std::string> five_letter_kept() {
  return {"t(1,3,2,5,4)", "t(1,3,5,4,2)", "t(1,4,2,5,3)", "t(1,4,3,2,5)",
          "t(1,4,3,5,2)", "t(1,4,5,2,3)", "t(1,4,5,3,2)", "t(1,5,2,4,3)",
          "t(1,5,3,2,4)", "t(1,5,3,4,2)", "t(1,5,4,2,3)", "t(1,5,4,3,2)"};
}

std::vector<std::string> six_in_five_fixed() {
  return {"t(1,2,4,3,-5)", "t(1,2,3,4,-5)", "t(1,3,4,2,-5)", "t(2,1,4,3,-5)",
          "t(2,1,3,4,-5)", "t(2,3,4,1,-5)", "t(4,1,3,2,-5)", "t(4,2,3,1,-5)",
          "t(4,1,2,3,-5)", "t(3,1,2,4,-5)", "t(3,1,4,2,-5)", "t(3,2,4,1,-5)"};
}

std::vector<std::string> six_in_five_kept() {
  return {"t(2,3,4,1,-5)", "t(3,1,2,4,-5)", "t(3,1,4,2,-5)", "t(3,2,4,1,-5)",
          "t(4,1,2,3,-5)", "t(4,1,3,2,-5)", "t(4,2,3,1,-5)"};
}

std::vector<std::string> six_letter_columns() { return permutation_words(5, 6); }

std::vector<std::string> six_letter_kept() {
  return {"t(4,3,1,5,2,6)", "t(4,3,2,5,1,6)", "t(4,3,5,2,1,6)", "t(5,2,1,4,3,6)",
          "t(5,2,4,3,1,6)", "t(5,3,1,4,2,6)", "t(5,3,2,1,4,6)", "t(5,3,2,4,1,6)",
          "t(5,3,4,1,2,6)", "t(5,3,4,2,1,6)", "t(5,4,1,3,2,6)", "t(5,4,2,1,3,6)",
          "t(5,4,2,3,1,6)", "t(5,4,3,1,2,6)", "t(5,4,3,2,1,6)"};
}

std::vector<NamedRelation> five_in_five_relations(PermutationConvention c) {
  std::vector<NamedRelation> out;
  TraceRelation f = fundamental_relation(x(1), x(2), x(3), x(4), x(5), Word());
  for (const auto& p : fundfive_permutations())
    out.push_back({"fundamental5 " + cycles_text(p), substitute(f, permutation_map(p, c))});
  for (int j = 2; j <= 5; ++j) {
    std::vector<Word> rest;
    for (int k = 2; k <= 5; ++k)
      if (k != j) rest.push_back(x(k));
    out.push_back({"cyclic_sum x1x" + std::to_string(j),
                   cyclic_sum(x(1) * x(j), rest[0], rest[1], rest[2])});
  }
  return out;
}

std::vector<NamedRelation> six_in_five_candidates() {
  std::vector<NamedRelation> out;
  std::vector<int> p = {1, 2, 3, 4};
  do {
    out.push_back({"order " + std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]) +
                       std::to_string(p[3]),
                   order_relation(p[0], p[1], p[2], p[3])});
  } while (std::next_permutation(p.begin(), p.end()));
  for (auto& r : six_in_five_sums()) out.push_back(r);
  return out;
}

std::vector<NamedRelation> relation_family(RelationFamily f) {
  switch (f) {
    case RelationFamily::FiveInFive:
      return five_in_five_relations(resolve_five_in_five_convention().chosen);
    case RelationFamily::SixInFive:
      return six_in_five_sums();
    case RelationFamily::SixInSix: {
      std::vector<NamedRelation> out;
      for (char which : {'A', 'B'}) {
        TraceRelation base = six_in_six_relation(which);
        std::vector<int> p = {1, 2, 3, 4, 5};
        do {
          std::map<int, Word> m;
          std::string name = std::string(1, which) + " [";
          for (int i = 0; i < 5; ++i) {
            m[i + 1] = x(p[i]);
            name += std::to_string(p[i]);
          }
          out.push_back({name + "]", substitute(base, m)});
        } while (std::next_permutation(p.begin(), p.end()));
      }
      return out;
    }
  }
  return {};
}

TraceRelation six_in_five_order_relation() {
  TracePolynomial q = reduced_difference(order_relation(1, 2, 3, 4));
  return as_relation(q, keys_of(permutation_words(4, -5)));
}

TraceRelation six_in_five_relation(int k) {
  if (k < 1 || k > 5) throw std::invalid_argument("sum relation index must be 1..5");
  SixInFiveRow r = project_six_in_five(six_in_five_sums()[k - 1].relation);
  return as_relation(r.q, keys_of(six_in_five_fixed()));
}

TraceRelation six_in_six_relation(char which) {
  if (which == 'A') return cyclic_sum(x(1) * x(2) * x(3), x(4), x(5), x(6));
  if (which == 'B') return cyclic_sum(x(1), x(2) * x(3), x(4) * x(5), x(6));
  throw std::invalid_argument("six-letter relation must be A or B");
}

namespace {

RelationMatrix assemble(RelationFamily f, const std::vector<NamedRelation>& rels,
                        const std::vector<CyclicKey>& cols, bool dedupe) {
  RelationMatrix m;
  m.family = f;
  m.columns = cols;
  std::set<std::vector<mpz_class>> seen;
  for (const auto& r : rels) {
    std::vector<Rational> row;
    if (f == RelationFamily::SixInFive)
      row = project_six_in_five(r.relation).row;
    else
      row = linear_part(reduced_difference(r.relation), cols, r.name);
    std::vector<mpz_class> ints;
    primitive(row, ints);
    if (dedupe && !seen.insert(ints).second) continue;
    m.entries.push_back(ints);
    m.row_provenance.push_back(r.name);
  }
  return m;
}

}  // namespace

RelationMatrix build_five_in_five(PermutationConvention c) {
  return assemble(RelationFamily::FiveInFive, five_in_five_relations(c),
                  keys_of(five_letter_columns()), false);
}

RelationMatrix build_relation_matrix(RelationFamily f) {
  static std::mutex mu;
  static std::map<RelationFamily, RelationMatrix> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(f);
  if (it != cache.end()) return it->second;
  RelationMatrix m;
  switch (f) {
    case RelationFamily::FiveInFive:
      m = build_five_in_five(resolve_five_in_five_convention().chosen);
      break;
    case RelationFamily::SixInFive:
      m = assemble(f, relation_family(f), keys_of(six_in_five_fixed()), false);
      break;
    case RelationFamily::SixInSix:
      m = assemble(f, relation_family(f), keys_of(six_letter_columns()), true);
      break;
  }
  return cache.emplace(f, m).first->second;
}

std::vector<std::size_t> pivot_columns(const IntMatrix& in) {
  IntMatrix a = in;
  std::vector<std::size_t> pivots;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[i][k] = a[r][c] * a[i][k] - a[i][c] * a[r][k];
        mpz_divexact(a[i][k].get_mpz_t(), a[i][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int exact_rank(const IntMatrix& m) { return static_cast<int>(pivot_columns(m).size()); }

int exact_rank(const RelationMatrix& m) { return exact_rank(m.entries); }

bool validate_complement(const RelationMatrix& m, const std::vector<CyclicKey>& keep) {
  std::set<std::size_t> kept;
  for (const auto& k : keep) {
    auto it = std::find(m.columns.begin(), m.columns.end(), k);
    if (it == m.columns.end()) throw std::invalid_argument("unknown column label " + k.str());
    kept.insert(static_cast<std::size_t>(it - m.columns.begin()));
  }
  IntMatrix sub;
  for (const auto& row : m.entries) {
    std::vector<mpz_class> r;
    for (std::size_t c = 0; c < row.size(); ++c)
      if (!kept.count(c)) r.push_back(row[c]);
    sub.push_back(r);
  }
  return exact_rank(sub) == exact_rank(m);
}

namespace {

IntMatrix to_int(const std::vector<std::vector<int>>& a) {
  IntMatrix m;
  for (const auto& row : a) m.push_back(std::vector<mpz_class>(row.begin(), row.end()));
  return m;
}

}  // namespace

std::optional<IntMatrix> printed_matrix(RelationFamily f) {
  if (f == RelationFamily::FiveInFive) {
    return to_int({
        {1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
        {1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0},
        {0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},
        {0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0},
        {1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0},
        {0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0},
        {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0},
        {0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1},
        {0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1},
    });
  }
  if (f == RelationFamily::SixInFive) {
    return to_int({
        {1, 1, 0, 1, 1, 0, -1, -1, 0, 0, -1, -1},
        {-1, 0, -1, 0, -1, 1, 1, 0, 1, -1, 0, 1},
        {-1, 1, 0, 0, -1, 1, 0, 1, 1, 0, 0, 0},
        {0, 0, 0, 1, 1, 0, 0, -1, -1, -1, 0, -1},
        {1, 0, -1, 1, 0, -1, -1, -1, 0, 0, 0, 0},
    });
  }
  return std::nullopt;
}

MatrixComparison compare_rows(const IntMatrix& built, const IntMatrix& printed) {
  MatrixComparison c;
  c.total_rows = built.size();
  c.same_shape = built.size() == printed.size() &&
                 (built.empty() || built[0].size() == printed[0].size());
  std::multiset<std::vector<mpz_class>> pool;
  for (const auto& row : printed) {
    std::vector<mpz_class> r = row;
    auto lead = std::find_if(r.begin(), r.end(), [](const mpz_class& v) { return v != 0; });
    if (lead != r.end() && *lead < 0)
      for (auto& v : r) v = -v;
    pool.insert(r);
  }
  for (const auto& row : built) {
    auto it = pool.find(row);
    if (it != pool.end()) {
      ++c.matched_rows;
      pool.erase(it);
    }
  }
  return c;
}

ConventionReport resolve_five_in_five_convention() {
  static std::once_flag once;
  static ConventionReport report;
  std::call_once(once, [] {
    std::vector<CyclicKey> keep = keys_of(five_letter_kept());
    IntMatrix printed = *printed_matrix(RelationFamily::FiveInFive);
    for (auto c : {PermutationConvention::Images, PermutationConvention::Preimages}) {
      RelationMatrix m = build_five_in_five(c);
      bool ok = exact_rank(m) == 12 && validate_complement(m, keep);
      bool match = compare_rows(m.entries, printed).equal_up_to_row_order();
      if (c == PermutationConvention::Images) {
        report.images_ok = ok;
        report.images_match_print = match;
      } else {
        report.preimages_ok = ok;
        report.preimages_match_print = match;
      }
    }
    if (!report.images_ok && !report.preimages_ok)
      throw std::runtime_error("neither permutation convention yields rank 12 with the printed complement");
    report.chosen = report.images_ok ? PermutationConvention::Images : PermutationConvention::Preimages;
  });
  return report;
}

std::string matrix_csv(const RelationMatrix& m) {
  std::ostringstream out;
  for (std::size_t c = 0; c < m.columns.size(); ++c)
    out << (c ? "," : "") << '"' << m.columns[c].str() << '"';
  out << '\n';
  for (const auto& row : m.entries) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c].get_str();
    out << '\n';
  }
  return out.str();
}

}  // namespace sl3

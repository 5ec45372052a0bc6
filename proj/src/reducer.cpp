#include "sl3/reducer.hpp"

#include <algorithm>
#include <compare>
#include <set>
#include <stdexcept>

#include "sl3/relmat.hpp"

namespace sl3 {

namespace {

TracePolynomial T(const Word& w) { return TracePolynomial::trace(w); }
Word x(int i, int e = 1) { return Word::generator(i, e); }
MatrixExpression M(const Word& w) { return MatrixExpression::word(w); }

Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word(std::vector<Letter>(w.letters().begin() + from, w.letters().begin() + to));
}

}  // namespace

std::string type_label(GeneratorType t) {
  static const char* labels[] = {
      "X",        "X^-1",       "XY",           "XYZ",        "XY^-1",
      "X^-1Y^-1", "XYZ^-1",     "WXYZ",         "VWXYZ",      "WXYZ^-1",
      "XYZY^-1",  "XY^-1Z^-1",  "X^-1Y^-1Z^-1", "WXY^-1Z^-1", "XYZ^-1Y^-1",
      "XYX^-1Y^-1", "VWXYZ^-1", "WXYZY^-1",     "UVWXYZ"};
  return labels[static_cast<int>(t)];
}

int type_letter_count(GeneratorType t) {
  static const int n[] = {1, 1, 2, 3, 2, 2, 3, 4, 5, 4, 3, 3, 3, 4, 3, 2, 5, 4, 6};
  return n[static_cast<int>(t)];
}

int type_weight(GeneratorType t) {
  static const int w[] = {1, 2, 2, 3, 3, 4, 4, 4, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 6};
  return w[static_cast<int>(t)];
}

std::vector<GeneratorType> all_generator_types() {
  std::vector<GeneratorType> out;
  for (int i = 0; i < kGeneratorTypeCount; ++i) out.push_back(static_cast<GeneratorType>(i));
  return out;
}

namespace {

struct LetterCounts {
  int positive = 0, negative = 0, both = 0;
  int letters() const { return positive + negative + both; }
};

LetterCounts count_letters(const Word& w) {
  std::map<int, int> seen;  // bit 1: positive, bit 2: negative
  for (const Letter& l : w.letters()) seen[l.index] |= l.exp > 0 ? 1 : 2;
  LetterCounts c;
  for (const auto& [i, m] : seen) {
    if (m == 1) ++c.positive;
    else if (m == 2) ++c.negative;
    else ++c.both;
  }
  return c;
}

bool unit_exponents(const Word& w) {
  return std::all_of(w.letters().begin(), w.letters().end(),
                     [](const Letter& l) { return l.exp == 1 || l.exp == -1; });
}

bool has_same_sign_repeat(const Word& w) {
  std::set<std::pair<int, bool>> seen;
  for (const Letter& l : w.letters())
    if (!seen.insert({l.index, l.exp > 0}).second) return true;
  return false;
}

int negative_runs(const Word& w) {
  int runs = 0;
  std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i)
    if (w[i].exp < 0 && w[(i + n - 1) % n].exp > 0) ++runs;
  if (runs == 0 && n > 0 && w[0].exp < 0) runs = 1;
  return runs;
}

// For a word with exponents +-1 in which exactly one letter occurs with both
// signs, the rotation X W2 X^-1 W1 is paired with W2 X W1 X^-1.
std::optional<CyclicKey> orientation_partner(const Word& w) {
  if (!unit_exponents(w) || has_same_sign_repeat(w)) return std::nullopt;
  LetterCounts c = count_letters(w);
  if (c.both != 1) return std::nullopt;
  std::map<int, int> seen;
  for (const Letter& l : w.letters()) seen[l.index] |= l.exp > 0 ? 1 : 2;
  int s = 0;
  for (const auto& [i, m] : seen)
    if (m == 3) s = i;
  std::size_t p = 0;
  while (!(w[p].index == s && w[p].exp > 0)) ++p;
  Word r = w.rotated(p);
  std::size_t q = 1;
  while (r[q].index != s) ++q;
  Word w2 = slice(r, 1, q), w1 = slice(r, q + 1, r.size());
  return canonical_cyclic_key(w2 * x(s) * w1 * x(s, -1));
}

int orientation_flag(const CyclicKey& k) {
  auto p = orientation_partner(k.word());
  return p && *p < k ? 1 : 0;
}

struct Measure {
  int weight, units, flag;
  auto operator<=>(const Measure&) const = default;
};

Measure measure(const CyclicKey& k) { return {k.weight(), k.units(), orientation_flag(k)}; }

}  // namespace

bool is_basis_key(const CyclicKey& key) {
  const Word& w = key.word();
  if (w.empty() || key.weight() > 6) return false;
  if (!unit_exponents(w) || has_same_sign_repeat(w)) return false;
  if (negative_runs(w) > 1) return false;
  return orientation_flag(key) == 0;
}

std::optional<GeneratorType> classify(const CyclicKey& key) {
  if (!is_basis_key(key)) return std::nullopt;
  LetterCounts c = count_letters(key.word());
  using G = GeneratorType;
  switch (c.letters()) {
    case 1:
      return c.positive ? G::X : G::Xinv;
    case 2:
      if (c.positive == 2) return G::XY;
      if (c.positive == 1) return G::XYinv;
      if (c.negative == 2) return G::XinvYinv;
      return G::XYXinvYinv;
    case 3:
      if (c.positive == 3) return G::XYZ;
      if (c.positive == 2 && c.negative == 1) return G::XYZinv;
      if (c.positive == 2) return G::XYZYinv;
      if (c.positive == 1 && c.negative == 2) return G::XYinvZinv;
      if (c.positive == 1) return G::XYZinvYinv;
      return G::XinvYinvZinv;
    case 4:
      if (c.positive == 4) return G::WXYZ;
      if (c.negative == 1) return G::WXYZinv;
      if (c.negative == 2) return G::WXYinvZinv;
      return G::WXYZYinv;
    case 5:
      return c.positive == 5 ? G::VWXYZ : G::VWXYZinv;
    case 6:
      return G::UVWXYZ;
  }
  return std::nullopt;
}

LetterClass letter_class(const CyclicKey& key) {
  std::map<int, int> seen;
  for (const Letter& l : key.word().letters()) seen[l.index] |= l.exp > 0 ? 1 : 2;
  LetterClass c;
  for (const auto& [i, m] : seen) {
    c.letters.push_back(i);
    c.pattern.push_back(m);
  }
  return c;
}

GeneratorInstance make_instance(const CyclicKey& key) {
  auto t = classify(key);
  if (!t) throw std::invalid_argument(key.str() + " is not a generator form");
  GeneratorInstance g;
  g.type = *t;
  g.letters = letter_class(key).letters;
  g.word = key.word();
  g.key = key;
  return g;
}

Word relabel(const Word& w, const std::map<int, int>& m) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters()) {
    auto it = m.find(l.index);
    out.push_back({it == m.end() ? l.index : it->second, l.exp});
  }
  return Word(out);
}

TracePolynomial relabel(const TracePolynomial& p, const std::map<int, int>& m) {
  return p.map_symbols([&](Sym s) { return T(relabel(key_of(s).word(), m)); });
}

namespace {

// Trace templates in placeholder letters. The seven-block templates multiply
// pol3 by one more block before the trace, so every trace factor on the right
// misses at least one block.
struct Templates {
  TracePolynomial square_repeat;  // tr(pol(x1,x2)x3) - t(x1^2 x2 x3) - t(x2 x1^2 x3) = t(x1x2x1x3)
  TracePolynomial pol2_trace;     // tr(pol2(x1,x2,x3) x4) / 3 = t(x1^2 x3 x2^2 x4)
  TracePolynomial pol3_block;     // tr(pol3(x1..x5) x6) / 6 = t(x1^2 x5 x4 x2 x3 x6)
  TracePolynomial pol3_polar;     // t((x1x2 + x2x1) x6 x5 x3 x4 x7)

  Templates() {
    MatrixExpression a = M(x(1)), b = M(x(2)), c = M(x(3)), d = M(x(4)), e = M(x(5)),
                     f = M(x(6)), g = M(x(7));
    square_repeat = (pol(a, b) * c).trace() - T(x(1, 2) * x(2) * x(3)) - T(x(2) * x(1, 2) * x(3));
    pol2_trace = Rational(1, 3) * (pol2(a, b, c) * d).trace();
    pol3_block = Rational(1, 6) * (pol3(a, b, c, d, e) * f).trace();
    pol3_polar = Rational(1, 6) *
                 ((pol3(a + b, c, d, e, f) - pol3(a, c, d, e, f) - pol3(b, c, d, e, f)) * g).trace();
  }
};

const Templates& templates() {
  static const Templates t;
  return t;
}

TracePolynomial sub(const TracePolynomial& p, const std::vector<Word>& words) {
  std::map<int, Word> m;
  for (std::size_t i = 0; i < words.size(); ++i) m[static_cast<int>(i) + 1] = words[i];
  return p.substitute(m);
}

// x^-1 = x^2 - t(x) x + t(x^-1) I, as (word, coefficient) pairs.
std::vector<std::pair<Word, TracePolynomial>> inverse_split(const Letter& l) {
  Word X = x(l.index);
  return {{X * X, TracePolynomial(1)}, {X, -T(X)}, {Word(), T(X.inverse())}};
}

TracePolynomial expand_power(const Word& w, std::size_t pos) {
  Word r = w.rotated(pos);
  const Letter l = r[0];
  Word rest = slice(r, 1, r.size());
  PowerExpansion p = power_expansion(l.index, l.exp);
  return p.identity * T(rest) + p.positive * T(x(l.index) * rest) +
         p.negative * T(x(l.index, -1) * rest);
}

Word product(const std::vector<Word>& blocks, std::size_t from = 0) {
  Word out;
  for (std::size_t i = from; i < blocks.size(); ++i) out = out * blocks[i];
  return out;
}

// t(X X B1 ... Bk) with every symbol of the result lighter than the input.
// Inverse blocks are split into squares until five blocks follow X X.
TracePolynomial square_front(const Word& X, std::vector<Word> blocks) {
  if (blocks.size() >= 5) {
    const Word &Z = blocks[0], &W = blocks[1], &U = blocks[2], &V = blocks[3];
    return sub(templates().pol3_block, {X, U, V, W, Z, product(blocks, 4)});
  }
  std::size_t j = 0;
  while (j < blocks.size() && blocks[j][0].exp > 0) ++j;
  if (j == blocks.size()) throw std::logic_error("too few blocks for the square rule");
  Word A = x(blocks[j][0].index);
  std::vector<Word> head(blocks.begin(), blocks.begin() + j);
  std::vector<Word> tail(blocks.begin() + j + 1, blocks.end());
  std::vector<Word> split = head;
  split.push_back(A);
  split.push_back(A);
  split.insert(split.end(), tail.begin(), tail.end());
  Word XX = X * X;
  return square_front(X, split) - T(A) * T(XX * product(head) * A * product(tail)) +
         T(A.inverse()) * T(XX * product(head) * product(tail));
}

// Trace of seven distinct letters as a polynomial in shorter traces. Adjacent
// transpositions change the sign modulo shorter traces, and the alternating
// sum over all orders vanishes on 3x3 matrices.
const TracePolynomial& seven_letter_trace() {
  static const TracePolynomial result = [] {
    using Order = std::vector<int>;
    auto normalize = [](Order o) {
      std::rotate(o.begin(), std::find(o.begin(), o.end(), 1), o.end());
      return o;
    };
    auto sign = [](const Order& o) {
      int inv = 0;
      for (std::size_t i = 0; i < o.size(); ++i)
        for (std::size_t j = i + 1; j < o.size(); ++j)
          if (o[i] > o[j]) ++inv;
      return inv % 2 ? -1 : 1;
    };
    Order id = {1, 2, 3, 4, 5, 6, 7};
    std::map<Order, TracePolynomial> g;  // t(o) - sign(o) t(id)
    g[id] = TracePolynomial();
    std::vector<Order> queue = {id};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      Order o = queue[q];
      for (std::size_t i = 0; i < 7; ++i) {
        Order r(7);
        for (std::size_t k = 0; k < 7; ++k) r[k] = o[(i + k) % 7];
        Order swapped = r;
        std::swap(swapped[0], swapped[1]);
        Order next = normalize(swapped);
        if (g.count(next)) continue;
        std::vector<Word> b;
        for (int l : r) b.push_back(x(l));
        TracePolynomial pair = sub(templates().pol3_polar, {b[0], b[1], b[4], b[5], b[3], b[2], b[6]});
        g[next] = pair - g[o];
        queue.push_back(next);
      }
    }
    PolynomialBuilder sum;
    for (const auto& [o, p] : g) sum.add(p, Rational(-sign(o), 720));
    return sum.finish();
  }();
  return result;
}

TracePolynomial long_word_rule(const Word& w) {
  std::size_t n = w.size();
  std::size_t neg = n;
  for (std::size_t i = 0; i < n; ++i)
    if (w[i].exp < 0) {
      neg = i;
      break;
    }
  if (neg == n) {
    std::vector<Word> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(slice(w, i, i + 1));
    if (n == 7) return sub(seven_letter_trace(), b);
    // 2 t(b0 b1 b2 R) from three polarized instances with a seventh block.
    Word M = product(b, 7);
    auto S = [&](const Word& X, const Word& Y) {
      return sub(templates().pol3_polar, {X, Y, b[5], b[6], b[4], b[3], M});
    };
    return Rational(1, 2) * (S(b[0], b[1] * b[2]) - S(b[1], b[2] * b[0]) + S(b[2], b[0] * b[1]));
  }
  Word r = w.rotated(neg);
  Word X = x(r[0].index);
  Word R = slice(r, 1, n);
  std::vector<Word> blocks;
  for (std::size_t i = 0; i < R.size(); ++i) blocks.push_back(slice(R, i, i + 1));
  return square_front(X, blocks) - T(X) * T(X * R) + T(X.inverse()) * T(R);
}

TracePolynomial separated_inverse_rule(const Word& w) {
  std::size_t n = w.size();
  std::size_t i = 0;
  while (!(w[i].exp < 0 && w[(i + 1) % n].exp > 0)) ++i;
  Word r = w.rotated(i);
  std::size_t j = 1;
  while (r[j].exp > 0) ++j;
  Letter X = r[0], Y = r[j];
  Word Z = slice(r, 1, j), W = slice(r, j + 1, n);
  TracePolynomial out;
  auto xs = inverse_split(X), ys = inverse_split(Y);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      if (a == 0 && b == 0) {
        out += sub(templates().pol2_trace, {x(X.index), x(Y.index), Z, W});
      } else {
        out += xs[a].second * ys[b].second * T(xs[a].first * Z * ys[b].first * W);
      }
    }
  return out;
}

TracePolynomial repeat_rule(const Word& w) {
  std::map<std::pair<int, int>, std::size_t> first;
  for (std::size_t q = 0; q < w.size(); ++q) {
    auto [it, fresh] = first.insert({{w[q].index, w[q].exp}, q});
    if (fresh) continue;
    std::size_t p = it->second;
    Word r = w.rotated(p);
    Word A = slice(r, 1, q - p), B = slice(r, q - p + 1, r.size());
    Word X = x(w[q].index, w[q].exp);
    return flatten_powers(sub(templates().square_repeat, {X, A, B}), w[q].index);
  }
  throw std::logic_error("no repeated letter");
}

TracePolynomial orientation_rule(const Word& w, const CyclicKey& partner) {
  std::map<int, int> seen;
  for (const Letter& l : w.letters()) seen[l.index] |= l.exp > 0 ? 1 : 2;
  int s = 0;
  for (const auto& [i, m] : seen)
    if (m == 3) s = i;
  std::size_t p = 0;
  while (!(w[p].index == s && w[p].exp > 0)) ++p;
  Word r = w.rotated(p);
  std::size_t q = 1;
  while (r[q].index != s) ++q;
  Word w2 = slice(r, 1, q), w1 = slice(r, q + 1, r.size());
  return eq3_swap(w1, w2, {s, 1}) - TracePolynomial::symbol(intern(partner));
}

// One rewrite step for a symbol that is not in basis form.
TracePolynomial rewrite_step(const CyclicKey& k) {
  const Word& w = k.word();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (std::abs(w[i].exp) >= 2) return expand_power(w, i);
  if (has_same_sign_repeat(w)) return repeat_rule(w);
  if (negative_runs(w) > 1) return separated_inverse_rule(w);
  if (k.weight() >= 7) return long_word_rule(w);
  auto partner = orientation_partner(w);
  if (partner && *partner < k) return orientation_rule(w, *partner);
  throw std::logic_error("no rewrite applies to " + k.str());
}

}  // namespace

Reducer& Reducer::shared() {
  static Reducer r;
  return r;
}

TracePolynomial Reducer::basis_of(Sym s) {
  auto it = basis_memo_.find(s);
  if (it != basis_memo_.end()) return it->second.unpack();
  const CyclicKey k = key_of(s);
  TracePolynomial out;
  if (is_basis_key(k)) {
    out = TracePolynomial::symbol(s);
  } else {
    TracePolynomial step = rewrite_step(k);
    Measure m = measure(k);
    for (Sym t : step.symbols()) {
      const CyclicKey& kt = key_of(t);
      if (!(measure(kt) < m))
        throw std::logic_error("rewrite of " + k.str() + " does not decrease the measure at " +
                               kt.str());
    }
    out = step.map_symbols([this](Sym t) { return basis_of(t); });
  }
  basis_memo_.emplace(s, PackedPolynomial(out));
  return out;
}

TracePolynomial Reducer::reduce_to_basis(const Word& w) {
  std::lock_guard lock(mu_);
  CyclicKey k = canonical_cyclic_key(w);
  if (k.empty()) return TracePolynomial(3);
  return basis_of(intern(k));
}

TracePolynomial Reducer::reduce_to_basis(const TracePolynomial& p) {
  std::lock_guard lock(mu_);
  return p.map_symbols([this](Sym t) { return basis_of(t); });
}

namespace {

std::vector<Letter> pattern_units(const std::vector<int>& pattern) {
  std::vector<Letter> units;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    int idx = static_cast<int>(i) + 1;
    if (pattern[i] & 1) units.push_back({idx, 1});
    if (pattern[i] & 2) units.push_back({idx, -1});
  }
  return units;
}

int pattern_weight(const std::vector<int>& pattern) {
  int w = 0;
  for (int e : pattern) w += e;
  return w;
}

std::vector<CyclicKey> basis_keys_for(const std::vector<int>& pattern) {
  std::vector<Letter> units = pattern_units(pattern);
  int weight = pattern_weight(pattern);
  std::set<CyclicKey> keys;
  if (units.empty()) return {};
  std::vector<std::size_t> perm(units.size() - 1);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i + 1;
  do {
    std::vector<Letter> ls{units[0]};
    for (std::size_t i : perm) ls.push_back(units[i]);
    Word w(ls);
    if (w.size() != units.size()) continue;
    CyclicKey k = canonical_cyclic_key(w);
    if (k.weight() != weight) continue;
    if (is_basis_key(k)) keys.insert(k);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {keys.begin(), keys.end()};
}

std::vector<CyclicKey> keys_from_t(const std::vector<std::string>& ts,
                                   const std::map<int, int>& m = {}) {
  std::vector<CyclicKey> out;
  for (const auto& t : ts) out.push_back(canonical_cyclic_key(relabel(parse_t_notation(t), m)));
  return out;
}

// Kept sets fixed by the printed solution sets and table representatives.
std::optional<std::vector<CyclicKey>> printed_kept(const std::vector<int>& pattern,
                                                   GeneratorType type) {
  using G = GeneratorType;
  switch (type) {
    case G::XYXinvYinv:
      return keys_from_t({"t(1,2,-1,-2)"});
    case G::XinvYinvZinv:
      return keys_from_t({"t(-1,-2,-3)"});
    case G::WXYZ:
      return keys_from_t(
          {"t(1,2,3,4)", "t(1,2,4,3)", "t(1,3,2,4)", "t(1,3,4,2)", "t(1,4,2,3)"});
    case G::VWXYZ:
      return keys_from_t(five_letter_kept());
    case G::VWXYZinv: {
      int p = 0;
      for (std::size_t i = 0; i < pattern.size(); ++i)
        if (pattern[i] == 2) p = static_cast<int>(i) + 1;
      std::map<int, int> swap;
      if (p != 5) swap = {{p, 5}, {5, p}};
      return keys_from_t(six_in_five_kept(), swap);
    }
    case G::UVWXYZ:
      return keys_from_t(six_letter_kept());
    default:
      return std::nullopt;
  }
}

// Candidate relations of a class in its local letters 1..k.
std::vector<NamedRelation> class_candidates(const std::vector<int>& pattern, GeneratorType type) {
  using G = GeneratorType;
  std::vector<int> pos, neg, both;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    int idx = static_cast<int>(i) + 1;
    (pattern[i] == 1 ? pos : pattern[i] == 2 ? neg : both).push_back(idx);
  }
  std::vector<NamedRelation> out;
  auto perms = [](std::vector<int> v) {
    std::vector<std::vector<int>> all;
    std::sort(v.begin(), v.end());
    do all.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return all;
  };
  switch (type) {
    case G::XYXinvYinv:
      for (auto p : perms(both)) {
        Word w1 = x(p[1], -1), w2 = x(p[1]), X = x(p[0]);
        out.push_back({"eq3", {T(w1 * X * w2 * X.inverse()) + T(w2 * X * w1 * X.inverse()),
                               eq3_swap(w1, w2, {p[0], 1})}});
      }
      break;
    case G::XinvYinvZinv:
      for (auto p : perms(neg))
        out.push_back({"fundamental(a,a,b,b,c,c)",
                       fundamental_relation(x(p[0]), x(p[0]), x(p[1]), x(p[1]), x(p[2]), x(p[2]))});
      break;
    case G::WXYZ:
      for (int a : pos) {
        std::vector<Word> rest;
        for (int b : pos)
          if (b != a) rest.push_back(x(b));
        out.push_back({"cyclic_sum", cyclic_sum(x(a), rest[0], rest[1], rest[2])});
      }
      break;
    case G::WXYZinv:
      out.push_back({"cyclic_sum", cyclic_sum(x(neg[0], -1), x(pos[0]), x(pos[1]), x(pos[2]))});
      break;
    case G::WXYinvZinv:
      for (auto a : perms(pos))
        for (auto p : perms(neg))
          out.push_back({"fundamental(a,b,p,q,q,p)",
                         fundamental_relation(x(a[0]), x(a[1]), x(p[0]), x(p[1]), x(p[1]),
                                              x(p[0]))});
      break;
    case G::WXYZYinv: {
      int s = both[0];
      for (auto a : perms(pos))
        out.push_back({"fundamental(a,b,s,s,c,s)",
                       fundamental_relation(x(a[0]), x(a[1]), x(s), x(s), x(a[2]), x(s))});
      for (auto a : perms(pos))
        out.push_back(
            {"cyclic_sum(s^-1 a,s,b,c)", cyclic_sum(x(s, -1) * x(a[0]), x(s), x(a[1]), x(a[2]))});
      std::vector<int> slots = pos;
      slots.insert(slots.end(), 3, s);
      std::sort(slots.begin(), slots.end());
      do {
        std::string name = "fundamental(";
        for (int i : slots) name += std::to_string(i);
        out.push_back({name + ")", fundamental_relation(x(slots[0]), x(slots[1]), x(slots[2]),
                                                        x(slots[3]), x(slots[4]), x(slots[5]))});
      } while (std::next_permutation(slots.begin(), slots.end()));
      break;
    }
    case G::VWXYZ:
      out = relation_family(RelationFamily::FiveInFive);
      break;
    case G::VWXYZinv: {
      int p = neg[0];
      std::map<int, int> swap;
      if (p != 5) swap = {{p, 5}, {5, p}};
      for (auto& r : six_in_five_candidates()) {
        std::map<int, Word> m;
        for (int i = 1; i <= 5; ++i) m[i] = x(swap.count(i) ? swap.at(i) : i);
        out.push_back({r.name, {r.relation.lhs.substitute(m), r.relation.rhs.substitute(m)}});
      }
      break;
    }
    case G::UVWXYZ:
      out = relation_family(RelationFamily::SixInSix);
      break;
    default:
      break;
  }
  return out;
}

int type_multiplier(GeneratorType t) {
  static const int m[] = {1, 1, 1, 2, 2, 1, 6, 5, 12, 20, 3, 6, 1, 18, 6, 1, 35, 8, 15};
  return m[static_cast<int>(t)];
}

using QMatrix = std::vector<std::vector<Rational>>;

// Row echelon form; returns pivot columns in order.
std::vector<std::size_t> echelon(QMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[row][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

QMatrix inverse(QMatrix a) {
  std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::runtime_error("singular relation system");
    std::swap(a[p], a[c]);
    Rational d = a[c][c];
    for (auto& v : a[c]) v /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  QMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(a[i].begin() + n, a[i].end());
  return out;
}

}  // namespace

const std::vector<std::vector<int>>& Reducer::patterns() {
  std::lock_guard lock(mu_);
  if (patterns_.empty()) {
    for (int k = 1; k <= 6; ++k) {
      std::vector<int> p(k, 1);
      while (true) {
        if (pattern_weight(p) <= 6 && !basis_keys_for(p).empty()) patterns_.push_back(p);
        int i = k - 1;
        while (i >= 0 && p[i] == 3) p[i--] = 1;
        if (i < 0) break;
        ++p[i];
      }
    }
  }
  return patterns_;
}

Reducer::ClassData& Reducer::class_data(const std::vector<int>& pattern) {
  auto it = classes_.find(pattern);
  if (it != classes_.end()) return *it->second;
  auto cd = std::make_unique<ClassData>();
  cd->info.pattern = pattern;
  std::vector<CyclicKey> keys = basis_keys_for(pattern);
  if (keys.empty()) throw std::invalid_argument("no generator forms with this multidegree");
  cd->info.type = *classify(keys[0]);
  for (const auto& k : keys) cd->info.symbols.push_back(intern(k));
  return *classes_.emplace(pattern, std::move(cd)).first->second;
}

void Reducer::build_rules(ClassData& cd) {
  if (cd.rules_ready) return;
  DegreeClass& info = cd.info;
  GeneratorType type = info.type;
  int same_type = 0;
  for (const auto& p : patterns())
    if (*classify(key_of(class_data(p).info.symbols[0])) == type) ++same_type;
  std::size_t target = static_cast<std::size_t>(type_multiplier(type) / same_type);
  std::size_t n = info.symbols.size();
  if (target > n) throw std::logic_error("class smaller than its kept count");
  std::size_t need = n - target;
  int weight = pattern_weight(info.pattern);

  std::map<Sym, std::size_t> column;
  for (std::size_t i = 0; i < n; ++i) column[info.symbols[i]] = i;

  QMatrix rows, span;  // span: reduced echelon basis of rows
  std::vector<std::size_t> span_pivots;
  std::vector<TracePolynomial> polys;
  std::vector<std::string> names;
  if (need > 0) {
    for (const auto& cand : class_candidates(info.pattern, type)) {
      TracePolynomial q =
          reduce_to_basis(cand.relation.lhs) - reduce_to_basis(cand.relation.rhs);
      std::vector<Rational> row(n);
      bool any = false;
      for (const auto& [m, c] : q.terms()) {
        if (m.size() != 1 || key_of(m[0]).weight() < weight) continue;
        auto col = column.find(m[0]);
        if (col == column.end())
          throw std::logic_error(cand.name + " leaves " + key_of(m[0]).str() + " outside its class");
        row[col->second] = c;
        any = true;
      }
      if (!any) continue;
      std::vector<Rational> red = row;
      for (std::size_t i = 0; i < span.size(); ++i)
        if (red[span_pivots[i]] != 0) {
          Rational f = red[span_pivots[i]];
          for (std::size_t c = 0; c < n; ++c) red[c] -= f * span[i][c];
        }
      auto lead = std::find_if(red.begin(), red.end(), [](const Rational& v) { return v != 0; });
      if (lead == red.end()) continue;
      std::size_t pc = static_cast<std::size_t>(lead - red.begin());
      Rational d = red[pc];
      for (auto& v : red) v /= d;
      for (auto& b : span)
        if (b[pc] != 0) {
          Rational f = b[pc];
          for (std::size_t c = 0; c < n; ++c) b[c] -= f * red[c];
        }
      span.push_back(std::move(red));
      span_pivots.push_back(pc);
      rows.push_back(row);
      polys.push_back(q);
      names.push_back(cand.name);
    }
    if (rows.size() < need)
      throw std::runtime_error("relation system for " + type_label(type) + " has rank " +
                               std::to_string(rows.size()) + ", expected " +
                               std::to_string(need));
    if (rows.size() > need)
      throw std::logic_error("relation system for " + type_label(type) +
                             " exceeds the minimal count");
  }
  info.relation_sources = names;
  cd.relations = polys;
  cd.rows = rows;

  std::vector<bool> removed(n, false);
  auto printed = printed_kept(info.pattern, type);
  if (printed && need > 0) {
    std::vector<bool> keep(n, false);
    for (const auto& k : *printed) {
      auto col = column.find(intern(k));
      if (col == column.end()) throw std::logic_error("printed generator " + k.str() + " not in class");
      keep[col->second] = true;
    }
    for (std::size_t i = 0; i < n; ++i) removed[i] = !keep[i];
    info.printed_choice = true;
  } else {
    QMatrix e = rows;
    for (std::size_t c : echelon(e)) removed[c] = true;
  }
  info.kept.clear();
  info.removed.clear();
  std::vector<std::size_t> dcols;
  for (std::size_t i = 0; i < n; ++i) {
    if (removed[i]) {
      info.removed.push_back(info.symbols[i]);
      dcols.push_back(i);
    } else {
      info.kept.push_back(info.symbols[i]);
    }
  }
  if (info.kept.size() != target)
    throw std::logic_error("kept set for " + type_label(type) + " has the wrong size");

  if (need > 0) {
    QMatrix rd(need, std::vector<Rational>(need));
    for (std::size_t i = 0; i < need; ++i)
      for (std::size_t j = 0; j < need; ++j) rd[i][j] = rows[i][dcols[j]];
    QMatrix lambda = inverse(rd);
    for (std::size_t j = 0; j < need; ++j) {
      PolynomialBuilder b;
      b.add(TracePolynomial::symbol(info.symbols[dcols[j]]));
      for (std::size_t i = 0; i < need; ++i)
        if (lambda[j][i] != 0) b.add(polys[i], -lambda[j][i]);
      TracePolynomial rule = b.finish();
      for (Sym s : rule.symbols())
        if (key_of(s).weight() == weight &&
            !std::binary_search(info.kept.begin(), info.kept.end(), s,
                                [](Sym a, Sym b) { return key_of(a) < key_of(b); }))
          throw std::logic_error("rule retains a removed generator");
      cd.rules.emplace(info.symbols[dcols[j]], std::move(rule));
    }
  }
  cd.rules_ready = true;
}

const DegreeClass& Reducer::degree_class(const std::vector<int>& pattern) {
  std::lock_guard lock(mu_);
  ClassData& cd = class_data(pattern);
  build_rules(cd);
  return cd.info;
}

const std::map<Sym, TracePolynomial>& Reducer::class_rules(const std::vector<int>& pattern) {
  std::lock_guard lock(mu_);
  ClassData& cd = class_data(pattern);
  build_rules(cd);
  return cd.rules;
}

namespace {

struct LocalForm {
  LetterClass cls;
  CyclicKey local;
  std::map<int, int> to_global;
};

LocalForm local_form(const CyclicKey& key) {
  LocalForm f;
  f.cls = letter_class(key);
  std::map<int, int> to_local;
  for (std::size_t i = 0; i < f.cls.letters.size(); ++i) {
    to_local[f.cls.letters[i]] = static_cast<int>(i) + 1;
    f.to_global[static_cast<int>(i) + 1] = f.cls.letters[i];
  }
  f.local = canonical_cyclic_key(relabel(key.word(), to_local));
  return f;
}

}  // namespace

bool Reducer::is_minimal_key(const CyclicKey& key) {
  if (!is_basis_key(key)) return false;
  std::lock_guard lock(mu_);
  LocalForm f = local_form(key);
  ClassData& cd = class_data(f.cls.pattern);
  build_rules(cd);
  return !cd.rules.count(intern(f.local));
}

TracePolynomial Reducer::minimal_of(Sym s) {
  auto it = minimal_memo_.find(s);
  if (it != minimal_memo_.end()) return it->second.unpack();
  const CyclicKey k = key_of(s);
  if (!is_basis_key(k)) throw std::logic_error("unresolvable symbol " + k.str());
  LocalForm f = local_form(k);
  ClassData& cd = class_data(f.cls.pattern);
  build_rules(cd);
  TracePolynomial out;
  auto rule = cd.rules.find(intern(f.local));
  if (rule == cd.rules.end()) {
    out = TracePolynomial::symbol(s);
  } else {
    TracePolynomial image = relabel(rule->second, f.to_global);
    out = image.map_symbols([this](Sym t) { return minimal_of(t); });
  }
  minimal_memo_.emplace(s, PackedPolynomial(out));
  return out;
}

TracePolynomial Reducer::reduce_to_minimal(const TracePolynomial& p, int r) {
  std::lock_guard lock(mu_);
  for (Sym s : p.symbols())
    if (key_of(s).word().max_index() > r)
      throw std::invalid_argument(key_of(s).str() + " uses a letter beyond rank " +
                                  std::to_string(r));
  return p.map_symbols([this](Sym t) { return minimal_of(t); });
}

std::vector<RewriteRule> Reducer::tier2_rules(int r) {
  std::lock_guard lock(mu_);
  std::vector<RewriteRule> out;
  for (const auto& pattern : patterns()) {
    int k = static_cast<int>(pattern.size());
    if (k > r) continue;
    ClassData& cd = class_data(pattern);
    build_rules(cd);
    if (cd.rules.empty()) continue;
    std::vector<int> pick(k);
    std::vector<bool> mask(r, false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
      std::map<int, int> m;
      int j = 0;
      for (int i = 0; i < r; ++i)
        if (mask[i]) m[++j] = i + 1;
      for (const auto& [local, rule] : cd.rules) {
        RewriteRule rr;
        rr.removed = make_instance(canonical_cyclic_key(relabel(key_of(local).word(), m)));
        rr.replacement = relabel(rule, m);
        out.push_back(std::move(rr));
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return out;
}

TracePolynomial reduce_to_basis(const Word& w) { return Reducer::shared().reduce_to_basis(w); }

TracePolynomial reduce_to_basis(const TracePolynomial& p) {
  return Reducer::shared().reduce_to_basis(p);
}

TracePolynomial reduce_to_minimal(const TracePolynomial& p, int r) {
  return Reducer::shared().reduce_to_minimal(p, r);
}

std::vector<RewriteRule> tier2_rules(int r) { return Reducer::shared().tier2_rules(r); }

}  // namespace sl3

#include "sl3/identities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "sl3/relmat.hpp"

namespace sl3 {

namespace {

MatrixExpression I() { return MatrixExpression::identity(); }
MatrixExpression M(const Word& w) { return MatrixExpression::word(w); }
TracePolynomial T(const Word& w) { return TracePolynomial::trace(w); }
Word x(int i, int e = 1) { return Word::generator(i, e); }

}  // namespace

MatrixExpression pol(const MatrixExpression& X, const MatrixExpression& Y) {
  TracePolynomial tx = X.trace(), ty = Y.trace();
  MatrixExpression xy = X * Y, yx = Y * X, x2 = X * X;
  TracePolynomial txy = xy.trace(), tx2 = x2.trace();
  TracePolynomial half_c = Rational(1, 2) * (tx2 - tx * tx);
  TracePolynomial scalar = (Y * x2).trace() - tx * txy - ty * half_c;
  return tx * (yx + xy) + (txy - tx * ty) * X + half_c * Y + scalar * I() + ty * x2;
}

MatrixExpression pol(const Word& x_, const Word& y) { return pol(M(x_), M(y)); }

MatrixExpression pol2(const MatrixExpression& X, const MatrixExpression& Y,
                      const MatrixExpression& Z) {
  MatrixExpression x2 = X * X;
  return pol(Y, x2 * Z) + X * pol(Y, X * Z) - pol(X, Y * Y) * Z - pol(X, Y) * Z * Y +
         x2 * pol(Y, Z);
}

MatrixExpression prepol3(const MatrixExpression& X, const MatrixExpression& U,
                         const MatrixExpression& V, const MatrixExpression& Z) {
  return pol2(X, U + V, Z) - pol2(X, U, Z) - pol2(X, V, Z);
}

MatrixExpression pol3(const MatrixExpression& X, const MatrixExpression& U,
                      const MatrixExpression& V, const MatrixExpression& W,
                      const MatrixExpression& Z) {
  return prepol3(X, U, V, Z * W) + prepol3(X, W * U, V, Z) - prepol3(X, W, V, Z) * U;
}

PowerExpansion power_expansion(int index, int e) {
  TracePolynomial t = T(x(index)), s = T(x(index, -1));
  PowerExpansion p{TracePolynomial(1), {}, {}};
  for (int k = 0; k < std::abs(e); ++k) {
    PowerExpansion n;
    if (e > 0) {
      n.identity = p.negative - p.positive * s;
      n.positive = p.identity + p.positive * t;
      n.negative = p.positive;
    } else {
      n.identity = p.positive - p.negative * t;
      n.positive = p.negative;
      n.negative = p.identity + p.negative * s;
    }
    p = std::move(n);
  }
  return p;
}

MatrixExpression power_expression(int index, int e) {
  PowerExpansion p = power_expansion(index, e);
  return p.identity * I() + p.positive * M(x(index)) + p.negative * M(x(index, -1));
}

namespace {

// One expansion step on the letter at position pos of a cyclic word.
TracePolynomial expand_letter(const Word& w, std::size_t pos) {
  Word r = w.rotated(pos);
  const Letter l = r[0];
  Word rest(std::vector<Letter>(r.letters().begin() + 1, r.letters().end()));
  PowerExpansion p = power_expansion(l.index, l.exp);
  return p.identity * T(rest) + p.positive * T(x(l.index) * rest) +
         p.negative * T(x(l.index, -1) * rest);
}

TracePolynomial flatten_symbol(Sym s, int index) {
  const Word& w = key_of(s).word();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if ((index == 0 || w[i].index == index) && std::abs(w[i].exp) >= 2)
      return flatten_powers(expand_letter(w, i), index);
  }
  return TracePolynomial::symbol(s);
}

}  // namespace

TracePolynomial flatten_powers(const TracePolynomial& p, int index) {
  return p.map_symbols([index](Sym s) { return flatten_symbol(s, index); });
}

TracePolynomial flatten_all_powers(const TracePolynomial& p) { return flatten_powers(p, 0); }

TracePolynomial eq2_rewrite(const Word& w1, const Word& w2, const Word& w3, const Letter& xl) {
  if (std::abs(xl.exp) != 1) throw std::invalid_argument("eq2_rewrite needs exponent +-1");
  Word X = x(xl.index, xl.exp);
  MatrixExpression sq = M(X * X);
  TracePolynomial rhs = -(M(w1) * sq * M(w2 * w3)).trace() - (M(w1 * w2) * sq * M(w3)).trace() +
                        (M(w1) * pol(M(X), M(w2)) * M(w3)).trace();
  return flatten_powers(rhs, xl.index);
}

TracePolynomial eq3_swap(const Word& w1, const Word& w2, const Letter& xl) {
  Word X = x(xl.index, xl.exp);
  Word Xi = X.inverse();
  // tr(W1 X W2 X^2) + tr(W2 X W1 X^2) from the Eq2 form with W3 = X, then
  // X^2 = X^-1 + t(X) X - t(X^-1) I on both terms.
  TracePolynomial squares = (M(w1) * pol(M(X), M(w2)) * M(X)).trace() - T(w1 * w2 * X.power(3));
  TracePolynomial tx = T(X), sx = T(Xi);
  TracePolynomial rhs = squares - Rational(2) * tx * T(w1 * X * w2 * X) +
                        sx * (T(w1 * X * w2) + T(w2 * X * w1));
  return flatten_powers(rhs, xl.index);
}

TraceRelation cyclic_sum(const Word& w, const Word& x_, const Word& y, const Word& z) {
  TraceRelation r;
  const Word* slots[3] = {&x_, &y, &z};
  int perm[3] = {0, 1, 2};
  do {
    r.lhs += T(w * *slots[perm[0]] * *slots[perm[1]] * *slots[perm[2]]);
  } while (std::next_permutation(perm, perm + 3));
  MatrixExpression X = M(x_), Y = M(y), Z = M(z);
  r.rhs = (M(w) * (pol(X + Z, Y) - pol(X, Y) - pol(Z, Y))).trace();
  return r;
}

const TraceRelation& fundamental_template() {
  static const TraceRelation rel = [] {
    MatrixExpression u = M(x(1)), v = M(x(2)), w = M(x(3)), xx = M(x(4)), y = M(x(5)),
                     z = M(x(6));
    TracePolynomial r = (pol3(u + v, z, y, xx, w) - pol3(u, z, y, xx, w) - pol3(v, z, y, xx, w))
                            .trace();
    Word U = x(1), V = x(2), W = x(3), X = x(4), Y = x(5), Z = x(6);
    TracePolynomial four =
        T(U * V * W * X * Y * Z) + T(U * V * W * Y * X * Z) + T(V * U * W * X * Y * Z) +
        T(V * U * W * Y * X * Z);
    TracePolynomial g = r - Rational(6) * (T(U * V * W * X * Z * Y) + T(V * U * W * X * Z * Y));
    TraceRelation out;
    out.lhs = Rational(3) * four;
    out.rhs = out.lhs - g;
    for (Sym s : out.rhs.symbols())
      if (key_of(s).weight() >= 6)
        throw std::logic_error("fundamental relation retained " + key_of(s).str());
    return out;
  }();
  return rel;
}

TraceRelation fundamental_relation(const Word& u, const Word& v, const Word& w, const Word& x_,
                                   const Word& y, const Word& z) {
  std::map<int, Word> sub{{1, u}, {2, v}, {3, w}, {4, x_}, {5, y}, {6, z}};
  const TraceRelation& t = fundamental_template();
  return {t.lhs.substitute(sub), t.rhs.substitute(sub)};
}

std::vector<IdentityId> all_identity_ids() {
  std::vector<IdentityId> ids;
  for (int i = 0; i <= static_cast<int>(IdentityId::PFormula); ++i)
    ids.push_back(static_cast<IdentityId>(i));
  return ids;
}

std::string identity_name(IdentityId id) {
  static const char* names[] = {"CayleyHamilton", "SquareInverseSwap", "Pol", "Eq2", "Eq3",
                                "CyclicSum", "Rank2Sum", "FundFive", "SixInFiveOrder", "R1",
                                "R2", "R3", "R4", "R5", "SixInSixA", "SixInSixB", "Pol2", "Pol3",
                                "FundamentalRelation", "PFormula"};
  return names[static_cast<int>(id)];
}

IdentityId identity_from_name(const std::string& name) {
  for (IdentityId id : all_identity_ids())
    if (identity_name(id) == name) return id;
  throw std::invalid_argument("unknown identity: " + name);
}

int IdentityCase::rank() const {
  int r = 1;
  auto scan_poly = [&](const TracePolynomial& p) {
    for (Sym s : p.symbols()) r = std::max(r, key_of(s).word().max_index());
  };
  auto scan_expr = [&](const MatrixExpression& e) {
    for (const auto& [w, c] : e.terms()) {
      r = std::max(r, w.max_index());
      scan_poly(c);
    }
  };
  scan_poly(lhs);
  scan_poly(rhs);
  scan_expr(matrix_lhs);
  scan_expr(matrix_rhs);
  return r;
}

IdentityCase rank2sum() {
  IdentityCase c;
  c.id = IdentityId::Rank2Sum;
  c.name = identity_name(c.id);
  c.lhs = parse_trace_polynomial("t(2,1,-2,-1)");
  c.rhs = parse_trace_polynomial(
      "-t(1,2,-1,-2) + t(1)*t(-1)*t(2)*t(-2) + t(1)*t(-1) + t(2)*t(-2)"
      " + t(1,2)*t(-1,-2) + t(1,-2)*t(-1,2) - t(-1)*t(2)*t(1,-2)"
      " - t(1)*t(-2)*t(-1,2) - t(1)*t(2)*t(-1,-2) - t(1,2)*t(-1)*t(-2) - 3");
  return c;
}

namespace {

IdentityCase from_relation(IdentityId id, int arity, const TraceRelation& r) {
  IdentityCase c;
  c.id = id;
  c.name = identity_name(id);
  c.arity = arity;
  c.lhs = r.lhs;
  c.rhs = r.rhs;
  return c;
}

IdentityCase from_matrices(IdentityId id, int arity, MatrixExpression lhs, MatrixExpression rhs) {
  IdentityCase c;
  c.id = id;
  c.name = identity_name(id);
  c.arity = arity;
  c.matrix_valued = true;
  c.matrix_lhs = std::move(lhs);
  c.matrix_rhs = std::move(rhs);
  return c;
}

// Moves the symbols of top weight from the right side to the left.
TraceRelation split_top(const TraceRelation& r, int weight) {
  TracePolynomial top;
  for (const auto& [m, c] : r.rhs.terms())
    if (m.size() == 1 && key_of(m[0]).weight() == weight)
      top += c * TracePolynomial::symbol(m[0]);
  return {r.lhs - top, r.rhs - top};
}

}  // namespace

IdentityCase build_identity(IdentityId id) {
  switch (id) {
    case IdentityId::CayleyHamilton: {
      Word X = x(1) * x(2, -1);
      MatrixExpression mx = M(X);
      return from_matrices(id, 1, M(X.power(3)),
                           T(X) * M(X * X) - T(X.inverse()) * mx + I());
    }
    case IdentityId::SquareInverseSwap: {
      Word U = x(2), X = x(1), V = x(3) * x(2);
      return from_relation(id, 3,
                           {T(U * X * X * V), T(U * X.inverse() * V) + T(X) * T(U * X * V) -
                                                  T(X.inverse()) * T(U * V)});
    }
    case IdentityId::Pol: {
      Word X = x(1), Y = x(2) * x(3, -1);
      return from_matrices(id, 2, M(Y * X * X) + M(X * X * Y) + M(X * Y * X), pol(X, Y));
    }
    case IdentityId::Eq2: {
      Word w1 = x(2), w2 = x(3), w3 = x(4) * x(2, -1);
      return from_relation(id, 4, {T(w1 * x(1) * w2 * x(1) * w3), eq2_rewrite(w1, w2, w3, {1, 1})});
    }
    case IdentityId::Eq3: {
      Word w1 = x(2), w2 = x(3) * x(4, -1), X = x(1);
      return from_relation(
          id, 3,
          {T(w1 * X * w2 * X.inverse()) + T(w2 * X * w1 * X.inverse()), eq3_swap(w1, w2, {1, 1})});
    }
    case IdentityId::CyclicSum:
      return from_relation(id, 4, cyclic_sum(x(1), x(2), x(3), x(4)));
    case IdentityId::Rank2Sum:
      return rank2sum();
    case IdentityId::FundFive: {
      TraceRelation r = split_top(fundamental_relation(x(1), x(2), x(3), x(4), x(5), Word()), 5);
      return from_relation(id, 5, {Rational(1, 3) * r.lhs, Rational(1, 3) * r.rhs});
    }
    case IdentityId::SixInFiveOrder:
      return from_relation(id, 5, six_in_five_order_relation());
    case IdentityId::R1:
    case IdentityId::R2:
    case IdentityId::R3:
    case IdentityId::R4:
    case IdentityId::R5:
      return from_relation(id, 5,
                           six_in_five_relation(static_cast<int>(id) -
                                                static_cast<int>(IdentityId::R1) + 1));
    case IdentityId::SixInSixA:
      return from_relation(id, 6, six_in_six_relation('A'));
    case IdentityId::SixInSixB:
      return from_relation(id, 6, six_in_six_relation('B'));
    case IdentityId::Pol2: {
      MatrixExpression X = M(x(1)), Y = M(x(2)), Z = M(x(3));
      return from_matrices(id, 3, Rational(3) * X * X * Z * Y * Y, pol2(X, Y, Z));
    }
    case IdentityId::Pol3: {
      MatrixExpression X = M(x(1)), U = M(x(2)), V = M(x(3)), W = M(x(4)), Z = M(x(5));
      return from_matrices(id, 5, Rational(6) * X * X * Z * W * U * V, pol3(X, U, V, W, Z));
    }
    case IdentityId::FundamentalRelation:
      return from_relation(id, 6, fundamental_template());
    case IdentityId::PFormula: {
      Word X = x(1) * x(2);
      TracePolynomial tx = T(X);
      return from_relation(
          id, 1, {T(X.power(3)), TracePolynomial(3) + Rational(1, 2) * (Rational(3) * tx * T(X * X) -
                                                                       tx * tx * tx)});
    }
  }
  throw std::invalid_argument("unknown identity id");
}

namespace {

template <class S>
double residual(const S& lhs, const S& rhs, EvalMode mode) {
  double diff = magnitude(S(lhs - rhs));
  if (mode == EvalMode::Exact) return diff;
  return diff / std::max({1.0, magnitude(lhs), magnitude(rhs)});
}

template <class S>
double case_residual(const IdentityCase& c, const Rep<S>& rep, EvalMode mode) {
  TraceEvaluator<S> ev(rep);
  if (!c.matrix_valued) return residual<S>(ev(c.lhs), ev(c.rhs), mode);
  Mat3<S> a = ev(c.matrix_lhs), b = ev(c.matrix_rhs);
  double worst = 0;
  for (int k = 0; k < 9; ++k) worst = std::max(worst, residual<S>(a.a[k], b.a[k], mode));
  return worst;
}

}  // namespace

IdentityReport verify_identity(const IdentityCase& c, EvalMode mode, int trials,
                               std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  IdentityReport rep;
  rep.name = c.name;
  rep.mode = mode;
  int r = c.rank();
  for (int t = 0; t < trials; ++t) {
    std::uint64_t s = derive_seed(seed, t);
    rep.trial_seeds.push_back(s);
    double res;
    try {
      res = mode == EvalMode::Exact ? case_residual(c, random_rep_exact(r, s), mode)
                                    : case_residual(c, random_rep_numeric(r, s), mode);
    } catch (const std::exception& e) {
      throw std::runtime_error(c.name + ": trial " + std::to_string(t) + " (seed " +
                               std::to_string(s) + "): " + e.what());
    }
    rep.max_residual = std::max(rep.max_residual, res);
    bool ok = mode == EvalMode::Exact ? res == 0 : res <= kNumericTolerance;
    if (!ok && rep.passed) {
      rep.passed = false;
      rep.failed_trial = t;
      rep.message = "residual " + std::to_string(res) + " at trial " + std::to_string(t);
    }
  }
  return rep;
}

}  // namespace sl3

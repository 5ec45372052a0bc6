#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sl3/trpoly.hpp"

namespace sl3 {

// Linearized Cayley-Hamilton in trace form; equals YX^2 + X^2Y + XYX for
// arbitrary 3x3 matrices.
MatrixExpression pol(const MatrixExpression& x, const MatrixExpression& y);
MatrixExpression pol(const Word& x, const Word& y);
// Equals 3 X^2 Z Y^2.
MatrixExpression pol2(const MatrixExpression& x, const MatrixExpression& y,
                      const MatrixExpression& z);
// Equals 3 X^2 Z (UV + VU).
MatrixExpression prepol3(const MatrixExpression& x, const MatrixExpression& u,
                         const MatrixExpression& v, const MatrixExpression& z);
// Equals 6 X^2 Z W U V.
MatrixExpression pol3(const MatrixExpression& x, const MatrixExpression& u,
                      const MatrixExpression& v, const MatrixExpression& w,
                      const MatrixExpression& z);

// x^e = identity * I + positive * x + negative * x^-1 for x in SL(3), with
// coefficients in t(x) and t(x^-1).
struct PowerExpansion {
  TracePolynomial identity;
  TracePolynomial positive;
  TracePolynomial negative;
};
PowerExpansion power_expansion(int index, int e);
MatrixExpression power_expression(int index, int e);

// Rewrites every symbol containing x_index^e with |e| >= 2 into symbols
// where that letter only occurs with exponent +-1.
TracePolynomial flatten_powers(const TracePolynomial& p, int index);
TracePolynomial flatten_all_powers(const TracePolynomial& p);

// Right side for tr(W1 X W2 X W3), X = x^{+-1}, with the squares of X
// flattened.
TracePolynomial eq2_rewrite(const Word& w1, const Word& w2, const Word& w3, const Letter& x);

// R with t(w1 x w2 x^-1) + t(w2 x w1 x^-1) = R on SL(3).
TracePolynomial eq3_swap(const Word& w1, const Word& w2, const Letter& x);

struct TraceRelation {
  TracePolynomial lhs;
  TracePolynomial rhs;
  TracePolynomial difference() const { return lhs - rhs; }
};

// lhs = sum over the six orders of tr(W sigma(XYZ)).
TraceRelation cyclic_sum(const Word& w, const Word& x, const Word& y, const Word& z);

// lhs = 3(t(uvwxyz) + t(uvwyxz) + t(vuwxyz) + t(vuwyxz)); rhs has no symbol
// built from all six slots.
TraceRelation fundamental_relation(const Word& u, const Word& v, const Word& w, const Word& x,
                                   const Word& y, const Word& z);

// The generic relation in placeholder letters 1..6.
const TraceRelation& fundamental_template();

enum class IdentityId {
  CayleyHamilton,
  SquareInverseSwap,
  Pol,
  Eq2,
  Eq3,
  CyclicSum,
  Rank2Sum,
  FundFive,
  SixInFiveOrder,
  R1,
  R2,
  R3,
  R4,
  R5,
  SixInSixA,
  SixInSixB,
  Pol2,
  Pol3,
  FundamentalRelation,
  PFormula,
};

std::vector<IdentityId> all_identity_ids();
std::string identity_name(IdentityId id);
IdentityId identity_from_name(const std::string& name);

struct IdentityCase {
  IdentityId id = IdentityId::CayleyHamilton;
  std::string name;
  int arity = 0;
  bool matrix_valued = false;
  TracePolynomial lhs, rhs;
  MatrixExpression matrix_lhs, matrix_rhs;
  int rank() const;
};

IdentityCase build_identity(IdentityId id);
// The relation as printed in the literature for two generators.
IdentityCase rank2sum();

enum class EvalMode { Exact, Numeric };

struct IdentityReport {
  std::string name;
  EvalMode mode = EvalMode::Exact;
  bool passed = true;
  double max_residual = 0;
  std::vector<std::uint64_t> trial_seeds;
  int failed_trial = -1;
  std::string message;
};

constexpr double kNumericTolerance = 1e-8;

// Exact mode requires a zero residual; numeric mode bounds
// |lhs - rhs| / max(1, |lhs|, |rhs|) by kNumericTolerance.
IdentityReport verify_identity(const IdentityCase& c, EvalMode mode, int trials,
                               std::uint64_t seed);

}  // namespace sl3

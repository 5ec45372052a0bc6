#pragma once

#include <cstdint>

#include "sl3/mat3.hpp"
#include "sl3/trpoly.hpp"

namespace sl3::testing {

// Evaluates every symbol by multiplying out its word; shares nothing with
// TraceEvaluator beyond word_matrix.
template <class S>
S direct_value(const TracePolynomial& p, const Rep<S>& rep) {
  S total(0);
  for (const auto& [m, c] : p.terms()) {
    S v = from_rational<S>(c);
    for (Sym s : m) v *= word_matrix(rep, key_of(s).word()).trace();
    total += v;
  }
  return total;
}

inline bool same_function(const TracePolynomial& p, const TracePolynomial& q, int r, int trials,
                          std::uint64_t seed) {
  for (int t = 0; t < trials; ++t) {
    RepQ rep = random_rep_exact(r, derive_seed(seed, t));
    if (direct_value(p, rep) != direct_value(q, rep)) return false;
  }
  return true;
}

inline bool traces_to(const TracePolynomial& p, const Word& w, int r, int trials,
                      std::uint64_t seed) {
  for (int t = 0; t < trials; ++t) {
    RepQ rep = random_rep_exact(r, derive_seed(seed, t));
    if (direct_value(p, rep) != word_matrix(rep, w).trace()) return false;
  }
  return true;
}

inline MatQ diag(const Rational& a, const Rational& b, const Rational& c) {
  MatQ m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

inline MatQ shear(int i, int j, int k) {
  MatQ m = MatQ::identity();
  m(i, j) = k;
  return m;
}

}  // namespace sl3::testing

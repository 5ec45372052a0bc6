#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include "json.hpp"
#include <stdexcept>
#include <string>
#include <vector>

#include "sl3/word.hpp"

namespace sl3 {

using Rational = mpq_class;
using Complex = std::complex<double>;

template <class S>
struct Mat3 {
  std::array<S, 9> a{};

  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = S(1);
    m(1, 1) = S(1);
    m(2, 2) = S(1);
    return m;
  }
  static Mat3 scalar(const S& s) {
    Mat3 m;
    m(0, 0) = s;
    m(1, 1) = s;
    m(2, 2) = s;
    return m;
  }

  S& operator()(int i, int j) { return a[3 * i + j]; }
  const S& operator()(int i, int j) const { return a[3 * i + j]; }

  S trace() const { return a[0] + a[4] + a[8]; }

  S det() const {
    const Mat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }

  Mat3 adjugate() const {
    const Mat3& m = *this;
    Mat3 r;
    r(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    r(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    r(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    r(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    r(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    r(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    r(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    r(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    r(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return r;
  }

  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        S s = x(i, 0) * y(0, j);
        s += x(i, 1) * y(1, j);
        s += x(i, 2) * y(2, j);
        r(i, j) = s;
      }
    return r;
  }
  friend Mat3 operator+(Mat3 x, const Mat3& y) {
    for (int k = 0; k < 9; ++k) x.a[k] += y.a[k];
    return x;
  }
  friend Mat3 operator-(Mat3 x, const Mat3& y) {
    for (int k = 0; k < 9; ++k) x.a[k] -= y.a[k];
    return x;
  }
  friend Mat3 operator*(const S& s, Mat3 x) {
    for (int k = 0; k < 9; ++k) x.a[k] *= s;
    return x;
  }
  Mat3& operator+=(const Mat3& y) {
    for (int k = 0; k < 9; ++k) a[k] += y.a[k];
    return *this;
  }
  bool operator==(const Mat3& o) const { return a == o.a; }
};

using MatQ = Mat3<Rational>;
using MatC = Mat3<Complex>;

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inverse of a matrix; numeric matrices with |det| < 1e-8 are rejected.
MatQ inverse(const MatQ& m);
MatC inverse(const MatC& m);

double magnitude(const Rational& x);
double magnitude(const Complex& x);

// A tuple of r matrices, one per generator of the free group.
template <class S>
struct Rep {
  std::vector<Mat3<S>> mats;
  int rank() const { return static_cast<int>(mats.size()); }
};

using RepQ = Rep<Rational>;
using RepC = Rep<Complex>;

// Evaluates a word; letters beyond the representation rank are an error.
template <class S>
Mat3<S> word_matrix(const Rep<S>& rep, const Word& w);

// Coefficients (c0, c1, c2, c3) of det(lambda I - X) =
// c0 lambda^3 - c1 lambda^2 + c2 lambda - c3, i.e. the elementary symmetric
// functions of the eigenvalues with c0 = 1.
template <class S>
std::array<S, 4> char_coefficients(const Mat3<S>& m);

// Newton recursion from power traces p[k-1] = tr(X^k), k = 1..n.
template <class S>
std::vector<S> elementary_from_power_traces(const std::vector<S>& p);

// 3 + (3 tr(X) tr(X^2) - tr(X)^3) / 2, equal to tr(X^3) on SL(3).
template <class S>
S p_poly(const Mat3<S>& m);

// Products of elementary shears E_ij(k), k in [-3,3] \ {0}.
MatQ random_sl3_exact(std::uint64_t seed, int min_steps = 6, int max_steps = 12);
// Complex Gaussian matrix rescaled by a cube root of its determinant.
MatC random_sl3_numeric(std::uint64_t seed);

RepQ random_rep_exact(int r, std::uint64_t seed);
RepC random_rep_numeric(int r, std::uint64_t seed);

// Mixes a base seed with a trial index into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

enum class Field { Rational, Complex };

// Parsed representation file; exactly one of exact/numeric is filled.
struct RepresentationData {
  Field field = Field::Rational;
  RepQ exact;
  RepC numeric;
  int rank() const { return field == Field::Rational ? exact.rank() : numeric.rank(); }
};

class RepresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Validates dimensions, r, and det = 1 (exactly, or within 1e-12).
RepresentationData representation_from_json(const nlohmann::json& j);
nlohmann::json representation_to_json(const RepQ& rep);
nlohmann::json representation_to_json(const RepC& rep);

std::string rational_text(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace sl3

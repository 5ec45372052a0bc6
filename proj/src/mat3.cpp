#include "sl3/mat3.hpp"

#include <cmath>
#include <random>

namespace sl3 {

MatQ inverse(const MatQ& m) {
  Rational d = m.det();
  if (d == 0) throw SingularMatrix("singular matrix");
  Rational inv = 1 / d;
  return inv * m.adjugate();
}

MatC inverse(const MatC& m) {
  Complex d = m.det();
  if (std::abs(d) < 1e-8) throw SingularMatrix("matrix is numerically singular");
  return (Complex(1) / d) * m.adjugate();
}

double magnitude(const Rational& x) { return std::abs(x.get_d()); }
double magnitude(const Complex& x) { return std::abs(x); }

namespace {

template <class S>
Mat3<S> matrix_power(const Mat3<S>& base, int n) {
  Mat3<S> out = Mat3<S>::identity();
  Mat3<S> b = base;
  while (n > 0) {
    if (n & 1) out = out * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return out;
}

}  // namespace

template <class S>
Mat3<S> word_matrix(const Rep<S>& rep, const Word& w) {
  Mat3<S> out = Mat3<S>::identity();
  for (const Letter& l : w.letters()) {
    if (l.index > rep.rank()) throw std::out_of_range("letter index exceeds representation rank");
    const Mat3<S>& g = rep.mats[l.index - 1];
    out = out * (l.exp > 0 ? matrix_power(g, l.exp) : matrix_power(inverse(g), -l.exp));
  }
  return out;
}

template <class S>
std::vector<S> elementary_from_power_traces(const std::vector<S>& p) {
  std::size_t n = p.size();
  std::vector<S> c(n + 1);
  c[0] = S(1);
  for (std::size_t k = 1; k <= n; ++k) {
    S acc = S(0);
    for (std::size_t i = 1; i <= k; ++i) {
      S term = c[k - i] * p[i - 1];
      if (i % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    c[k] = acc / S(static_cast<int>(k));
  }
  return c;
}

template <class S>
std::array<S, 4> char_coefficients(const Mat3<S>& m) {
  Mat3<S> m2 = m * m;
  Mat3<S> m3 = m2 * m;
  std::vector<S> c = elementary_from_power_traces<S>({m.trace(), m2.trace(), m3.trace()});
  return {c[0], c[1], c[2], c[3]};
}

template <class S>
S p_poly(const Mat3<S>& m) {
  S t1 = m.trace();
  S t2 = (m * m).trace();
  return S(3) + (S(3) * t1 * t2 - t1 * t1 * t1) / S(2);
}

template Mat3<Rational> word_matrix(const Rep<Rational>&, const Word&);
template Mat3<Complex> word_matrix(const Rep<Complex>&, const Word&);
template std::vector<Rational> elementary_from_power_traces(const std::vector<Rational>&);
template std::vector<Complex> elementary_from_power_traces(const std::vector<Complex>&);
template std::array<Rational, 4> char_coefficients(const Mat3<Rational>&);
template std::array<Complex, 4> char_coefficients(const Mat3<Complex>&);
template Rational p_poly(const Mat3<Rational>&);
template Complex p_poly(const Mat3<Complex>&);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MatQ random_sl3_exact(std::uint64_t seed, int min_steps, int max_steps) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> steps_dist(min_steps, max_steps);
  std::uniform_int_distribution<int> pos(0, 2);
  std::uniform_int_distribution<int> mag(1, 3);
  std::bernoulli_distribution neg(0.5);
  MatQ m = MatQ::identity();
  int steps = steps_dist(rng);
  for (int s = 0; s < steps; ++s) {
    int i = pos(rng), j = pos(rng);
    while (j == i) j = pos(rng);
    int k = mag(rng) * (neg(rng) ? -1 : 1);
    MatQ e = MatQ::identity();
    e(i, j) = k;
    m = m * e;
  }
  return m;
}

MatC random_sl3_numeric(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    MatC m;
    for (auto& x : m.a) x = Complex(g(rng), g(rng));
    Complex d = m.det();
    if (std::abs(d) < 1e-8) continue;
    Complex root = std::pow(d, 1.0 / 3.0);
    return (Complex(1) / root) * m;
  }
}

RepQ random_rep_exact(int r, std::uint64_t seed) {
  RepQ rep;
  for (int i = 0; i < r; ++i) rep.mats.push_back(random_sl3_exact(derive_seed(seed, i)));
  return rep;
}

RepC random_rep_numeric(int r, std::uint64_t seed) {
  RepC rep;
  for (int i = 0; i < r; ++i) rep.mats.push_back(random_sl3_numeric(derive_seed(seed, i)));
  return rep;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw RepresentationError("invalid rational entry: \"" + s + "\"");
  q.canonicalize();
  return q;
}

RepresentationData representation_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw RepresentationError("representation must be a JSON object");
  if (!j.contains("r") || !j["r"].is_number_integer())
    throw RepresentationError("missing integer field \"r\"");
  if (!j.contains("field") || !j["field"].is_string())
    throw RepresentationError("missing string field \"field\"");
  if (!j.contains("matrices") || !j["matrices"].is_array())
    throw RepresentationError("missing array field \"matrices\"");
  int r = j["r"].get<int>();
  std::string field = j["field"].get<std::string>();
  const auto& mats = j["matrices"];
  if (r < 1) throw RepresentationError("r must be >= 1");
  if (static_cast<int>(mats.size()) != r)
    throw RepresentationError("expected " + std::to_string(r) + " matrices, got " +
                              std::to_string(mats.size()));
  RepresentationData out;
  if (field == "rational") {
    out.field = Field::Rational;
  } else if (field == "complex") {
    out.field = Field::Complex;
  } else {
    throw RepresentationError("field must be \"rational\" or \"complex\"");
  }
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const auto& m = mats[k];
    std::string where = "matrix " + std::to_string(k + 1);
    if (!m.is_array() || m.size() != 3) throw RepresentationError(where + " must be 3x3");
    MatQ q;
    MatC c;
    for (int i = 0; i < 3; ++i) {
      if (!m[i].is_array() || m[i].size() != 3) throw RepresentationError(where + " must be 3x3");
      for (int jj = 0; jj < 3; ++jj) {
        const auto& e = m[i][jj];
        if (out.field == Field::Rational) {
          if (e.is_number_integer())
            q(i, jj) = Rational(std::to_string(e.get<long long>()));
          else if (e.is_string())
            q(i, jj) = parse_rational(e.get<std::string>());
          else
            throw RepresentationError(where + ": rational entries must be integers or \"p/q\"");
        } else {
          if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw RepresentationError(where + ": complex entries must be [re, im]");
          c(i, jj) = Complex(e[0].get<double>(), e[1].get<double>());
        }
      }
    }
    if (out.field == Field::Rational) {
      if (q.det() != 1) throw RepresentationError(where + " does not have determinant 1");
      out.exact.mats.push_back(q);
    } else {
      if (std::abs(c.det() - Complex(1)) > 1e-12)
        throw RepresentationError(where + " does not have determinant 1 within 1e-12");
      out.numeric.mats.push_back(c);
    }
  }
  return out;
}

nlohmann::json representation_to_json(const RepQ& rep) {
  nlohmann::json mats = nlohmann::json::array();
  for (const MatQ& m : rep.mats) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < 3; ++j) row.push_back(rational_text(m(i, j)));
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  return {{"r", rep.rank()}, {"field", "rational"}, {"matrices", mats}};
}

nlohmann::json representation_to_json(const RepC& rep) {
  nlohmann::json mats = nlohmann::json::array();
  for (const MatC& m : rep.mats) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < 3; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  return {{"r", rep.rank()}, {"field", "complex"}, {"matrices", mats}};
}

}  // namespace sl3

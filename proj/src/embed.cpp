#include "sl3/embed.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "sl3/identities.hpp"

namespace sl3 {

namespace {

template <class S>
S trace_coordinate(const Rep<S>& rep, const Word& w) {
  return word_matrix(rep, w).trace();
}

template <class S>
Mat3<S> checked_inverse(const Mat3<S>& g) {
  S d = g.det();
  if (d == S(0)) throw SingularMatrix("conjugator is singular");
  return (S(1) / d) * g.adjugate();
}

}  // namespace

template <class S>
EmbeddingVector<S> embed_with(const Rep<S>& rep, const CoordinateFn<S>& coordinate) {
  if (rep.rank() < 1) throw std::invalid_argument("representation has rank 0");
  EmbeddingVector<S> out;
  out.generators = enumerate_minimal_set(rep.rank());
  for (const auto& g : out.generators) out.values.push_back(coordinate(rep, g.word));
  return out;
}

template <class S>
EmbeddingVector<S> embed(const Rep<S>& rep) {
  return embed_with<S>(rep, trace_coordinate<S>);
}

template <class S>
Rep<S> conjugate(const Rep<S>& rep, const Mat3<S>& g) {
  Mat3<S> gi = checked_inverse(g);
  Rep<S> out;
  for (const auto& m : rep.mats) out.mats.push_back(g * m * gi);
  return out;
}

MatQ random_conjugator_exact(std::uint64_t seed, int trial) {
  static const Rational dets[] = {Rational(2), Rational(-1), Rational(1, 3), Rational(-5, 2)};
  MatQ g = random_sl3_exact(derive_seed(seed, static_cast<std::uint64_t>(trial)));
  if (trial % 2 == 1) {
    MatQ d = MatQ::identity();
    d(0, 0) = dets[(trial / 2) % 4];
    g = g * d;
  }
  return g;
}

MatC random_conjugator_numeric(std::uint64_t seed, int trial) {
  MatC g = random_sl3_numeric(derive_seed(seed, static_cast<std::uint64_t>(trial)));
  if (trial % 2 == 1) g = Complex(1.3, -0.4) * g;
  return g;
}

namespace {

double residual(const Rational& a, const Rational& b) { return a == b ? 0.0 : 1.0; }

double residual(const Complex& a, const Complex& b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

bool within(double r, const Rational*) { return r == 0.0; }
bool within(double r, const Complex*) { return r <= kNumericTolerance; }

Mat3<Rational> conjugator(std::uint64_t seed, int trial, const Rational*) {
  return random_conjugator_exact(seed, trial);
}
Mat3<Complex> conjugator(std::uint64_t seed, int trial, const Complex*) {
  return random_conjugator_numeric(seed, trial);
}

}  // namespace

template <class S>
InvarianceReport invariance_report(const Rep<S>& rep, int trials, std::uint64_t seed,
                                   const CoordinateFn<S>& coordinate) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  CoordinateFn<S> f = coordinate ? coordinate : CoordinateFn<S>(trace_coordinate<S>);
  EmbeddingVector<S> base = embed_with(rep, f);
  InvarianceReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Mat3<S> g = conjugator(seed, t, static_cast<const S*>(nullptr));
    EmbeddingVector<S> moved = embed_with(conjugate(rep, g), f);
    for (std::size_t k = 0; k < base.size(); ++k) {
      double r = residual(base.values[k], moved.values[k]);
      report.max_residual = std::max(report.max_residual, r);
      if (!within(r, static_cast<const S*>(nullptr)) && report.passed) {
        report.passed = false;
        report.failed_trial = t;
        report.message = "coordinate " + base.generators[k].key.str() + " changed in trial " +
                         std::to_string(t);
      }
    }
  }
  return report;
}

template EmbeddingVector<Rational> embed(const Rep<Rational>&);
template EmbeddingVector<Complex> embed(const Rep<Complex>&);
template EmbeddingVector<Rational> embed_with(const Rep<Rational>&, const CoordinateFn<Rational>&);
template EmbeddingVector<Complex> embed_with(const Rep<Complex>&, const CoordinateFn<Complex>&);
template Rep<Rational> conjugate(const Rep<Rational>&, const Mat3<Rational>&);
template Rep<Complex> conjugate(const Rep<Complex>&, const Mat3<Complex>&);
template InvarianceReport invariance_report(const Rep<Rational>&, int, std::uint64_t,
                                            const CoordinateFn<Rational>&);
template InvarianceReport invariance_report(const Rep<Complex>&, int, std::uint64_t,
                                            const CoordinateFn<Complex>&);

}  // namespace sl3

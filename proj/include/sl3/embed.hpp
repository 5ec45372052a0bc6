#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sl3/generators.hpp"
#include "sl3/mat3.hpp"

namespace sl3 {

template <class S>
struct EmbeddingVector {
  std::vector<GeneratorInstance> generators;
  std::vector<S> values;
  std::size_t size() const { return values.size(); }
};

using EmbeddingQ = EmbeddingVector<Rational>;
using EmbeddingC = EmbeddingVector<Complex>;

// Coordinate evaluator: the value attached to one generator word.
template <class S>
using CoordinateFn = std::function<S(const Rep<S>&, const Word&)>;

// Traces of the minimal generating set for the rank of rep.
template <class S>
EmbeddingVector<S> embed(const Rep<S>& rep);
template <class S>
EmbeddingVector<S> embed_with(const Rep<S>& rep, const CoordinateFn<S>& coordinate);

// (g A_1 g^-1, ..., g A_r g^-1); g need only be invertible.
template <class S>
Rep<S> conjugate(const Rep<S>& rep, const Mat3<S>& g);

// Invertible conjugator with determinant drawn from a small set of values
// other than 1 on odd trials.
MatQ random_conjugator_exact(std::uint64_t seed, int trial);
MatC random_conjugator_numeric(std::uint64_t seed, int trial);

struct InvarianceReport {
  bool passed = true;
  int trials = 0;
  double max_residual = 0;  // relative in numeric mode, 0 or 1 in exact mode
  int failed_trial = -1;
  std::string message;
};

template <class S>
InvarianceReport invariance_report(const Rep<S>& rep, int trials, std::uint64_t seed,
                                   const CoordinateFn<S>& coordinate = {});

}  // namespace sl3

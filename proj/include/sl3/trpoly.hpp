#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "sl3/mat3.hpp"
#include "sl3/word.hpp"

namespace sl3 {

// Interned id of a nonempty CyclicKey. Ids are process-wide and stable.
using Sym = std::uint32_t;

Sym intern(const CyclicKey& key);
const CyclicKey& key_of(Sym s);
std::size_t symbol_count();

// Display order: weighted length, then key order.
bool display_less(Sym a, Sym b);

// Multiset of symbols, sorted by id.
using Monomial = boost::container::small_vector<Sym, 8>;

Monomial monomial_product(const Monomial& a, const Monomial& b);
int monomial_weight(const Monomial& m);

// Polynomial with rational coefficients in trace symbols t(w). The trace of
// the empty word is the constant 3 and never appears as a symbol.
class TracePolynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  TracePolynomial() = default;
  explicit TracePolynomial(const Rational& c);
  explicit TracePolynomial(long c) : TracePolynomial(Rational(c)) {}

  static TracePolynomial trace(const Word& w);
  static TracePolynomial symbol(Sym s);
  static TracePolynomial from_terms(std::vector<Term> terms);
  // Sum of scale * polynomial over the parts, by merging their sorted term lists.
  static TracePolynomial linear_combination(
      const std::vector<std::pair<const TracePolynomial*, Rational>>& parts);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient({}); }

  // Largest total weight of a monomial; -1 for the zero polynomial.
  int degree() const;
  // Largest weight of a single symbol; 0 when there are none.
  int max_symbol_weight() const;
  std::vector<Sym> symbols() const;

  TracePolynomial& operator+=(const TracePolynomial& o);
  TracePolynomial& operator-=(const TracePolynomial& o);
  TracePolynomial& operator*=(const Rational& c);
  friend TracePolynomial operator+(TracePolynomial a, const TracePolynomial& b) { return a += b; }
  friend TracePolynomial operator-(TracePolynomial a, const TracePolynomial& b) { return a -= b; }
  friend TracePolynomial operator-(TracePolynomial a) { return a *= Rational(-1); }
  friend TracePolynomial operator*(const Rational& c, TracePolynomial a) { return a *= c; }
  friend TracePolynomial operator*(const TracePolynomial& a, const TracePolynomial& b);
  bool operator==(const TracePolynomial& o) const { return terms_ == o.terms_; }

  // Replaces each symbol by an image polynomial.
  TracePolynomial map_symbols(const std::function<TracePolynomial(Sym)>& image) const;
  // Applies the homomorphism x_i -> words[i] to every trace symbol.
  TracePolynomial substitute(const std::map<int, Word>& words) const;

  std::string str() const;

 private:
  friend class PolynomialBuilder;
  friend class PackedPolynomial;
  std::vector<Term> terms_;  // sorted by monomial, nonzero coefficients
};

// Accumulates terms and merges them lazily.
class PolynomialBuilder {
 public:
  void add(Monomial m, Rational c);
  void add(const TracePolynomial& p, const Rational& scale = 1);
  void add(TracePolynomial&& p, const Rational& scale = 1);
  void add_product(const TracePolynomial& a, const TracePolynomial& b, const Rational& scale = 1);
  TracePolynomial finish();

 private:
  void compact();
  std::vector<TracePolynomial::Term> pending_;
  std::size_t compacted_ = 0;
};

// Byte-packed copy of a polynomial for long-lived caches: varint symbol
// deltas and machine-word coefficients where they fit.
class PackedPolynomial {
 public:
  PackedPolynomial() = default;
  explicit PackedPolynomial(const TracePolynomial& p);
  TracePolynomial unpack() const;
  std::size_t bytes() const { return data_.size(); }

 private:
  std::string data_;
};

// Reads the text produced by TracePolynomial::str(); juxtaposed factors
// such as "t(1)t(2)" are accepted too.
TracePolynomial parse_trace_polynomial(std::string_view text);

// Linear combination of words with trace-polynomial coefficients.
class MatrixExpression {
 public:
  MatrixExpression() = default;
  static MatrixExpression identity();
  static MatrixExpression word(const Word& w);
  static MatrixExpression generator(int index, int exp = 1);

  const std::map<Word, TracePolynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  MatrixExpression& operator+=(const MatrixExpression& o);
  MatrixExpression& operator-=(const MatrixExpression& o);
  friend MatrixExpression operator+(MatrixExpression a, const MatrixExpression& b) { return a += b; }
  friend MatrixExpression operator-(MatrixExpression a, const MatrixExpression& b) { return a -= b; }
  friend MatrixExpression operator*(const MatrixExpression& a, const MatrixExpression& b);
  friend MatrixExpression operator*(const TracePolynomial& c, const MatrixExpression& a);
  friend MatrixExpression operator*(const Rational& c, const MatrixExpression& a);
  bool operator==(const MatrixExpression& o) const { return terms_ == o.terms_; }

  TracePolynomial trace() const;
  MatrixExpression substitute(const std::map<int, Word>& words) const;
  std::string str() const;

 private:
  void add_term(const Word& w, const TracePolynomial& c);
  std::map<Word, TracePolynomial> terms_;
};

template <class S>
S from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline Complex from_rational<Complex>(const Rational& q) { return Complex(q.get_d(), 0.0); }

// Evaluates trace symbols on a fixed representation, caching symbol values.
template <class S>
class TraceEvaluator {
 public:
  explicit TraceEvaluator(const Rep<S>& rep) : rep_(rep) {}

  const S& value(Sym s);
  S operator()(const TracePolynomial& p);
  Mat3<S> operator()(const MatrixExpression& e);
  const Rep<S>& rep() const { return rep_; }

 private:
  const Rep<S>& rep_;
  std::unordered_map<Sym, S> cache_;
};

extern template class TraceEvaluator<Rational>;
extern template class TraceEvaluator<Complex>;

}  // namespace sl3

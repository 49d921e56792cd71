#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "liencenter/error.hpp"

namespace lc {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator).
using Rational = mpq_class;

/// Canonical text form `p` or `p/q`.
std::string to_string(const Rational& q);

/// Parses `p` or `p/q`; also accepts a finite decimal such as `-1.9`.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational rational_from_double(double x);

/// Dense univariate polynomial with exact rational coefficients.
///
/// coeffs()[i] is the coefficient of x^i. The stored vector never ends in a
/// zero, so the zero polynomial has an empty coefficient list and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs)
      : Polynomial(std::vector<Rational>(coeffs)) {}

  static Polynomial monomial(const Rational& c, int power);
  static Polynomial constant(const Rational& c) { return monomial(c, 0); }
  static Polynomial x() { return monomial(1, 1); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of x^i; zero beyond the degree.
  Rational coeff(int i) const;
  const Rational& leading() const;

  /// Index of the lowest nonzero coefficient, -1 for the zero polynomial.
  int lowest_power() const;

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  long double eval(long double x) const;

  Polynomial derivative() const;

  /// Odd (resp. even) part; p = odd_part + even_part.
  Polynomial odd_part() const;
  Polynomial even_part() const;
  bool is_odd() const { return even_part().is_zero(); }
  bool is_even() const { return odd_part().is_zero(); }

  /// p(-x).
  Polynomial reflected() const;
  /// p(k x) for rational k.
  Polynomial scaled_argument(const Rational& k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Canonical print: ascending powers, coefficients as `p/q`.
  std::string to_string() const;

  /// Coefficients rounded to double, index = power.
  std::vector<double> to_doubles() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// p / gcd(p, p'), made monic.
Polynomial square_free_part(const Polynomial& p);

/// q with q(0) = 0 and q' = p.
Polynomial antiderivative(const Polynomial& p);

/// Parses the text grammar
///   poly := term (('+'|'-') term)*
///   term := coef ('*'? 'x' ('^' nat)?)? | 'x' ('^' nat)?
///   coef := int | int '/' nat
/// with whitespace ignored. A leading sign on the first term is accepted.
/// Throws ParseError carrying the byte offset of the failure.
Polynomial parse_polynomial(std::string_view text);

/// Result of a sign test.
///
/// When `verdict` is false, `witness_x` is a rational point at which the
/// tested polynomial is <= 0 if `witness_exact`; otherwise every rational
/// value is strictly positive and the violation is a double root at an
/// irrational point, bracketed by [root_lo, root_hi] with witness_x inside.
struct SignWitness {
  bool verdict = true;
  std::optional<Rational> witness_x;
  bool witness_exact = true;
  std::optional<std::pair<Rational, Rational>> root_bracket;
};

/// Decides p(x) > 0 for every real x != 0 in exact arithmetic.
SignWitness is_positive_punctured(const Polynomial& p);

/// Root bound B >= 1: every real root lies in [-B, B].
Rational cauchy_bound(const Polynomial& p);

/// Half-open interval (lo, hi] containing exactly one real root; lo == hi
/// when the root is known exactly.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

/// Sturm chain of the square-free part of p.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);
  /// Number of distinct real roots in (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
  const Polynomial& base() const { return chain_.front(); }

 private:
  int sign_variations(const Rational& x) const;
  std::vector<Polynomial> chain_;
};

/// Isolates every distinct real root of p (ascending order). Intervals are
/// refined until their width is at most `width`.
std::vector<RootInterval> isolate_real_roots(const Polynomial& p,
                                             const Rational& width = Rational(1, 1024));

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace lc

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "liencenter/poly.hpp"

namespace lc {

/// Closed interval of doubles with outward rounding: every operation widens
/// its result by one ulp on each side, which encloses the exact result of the
/// round-to-nearest computation.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h) : lo(l), hi(h) {}

  static double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
  static double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

  /// Enclosure of an exact rational.
  static Interval enclose(const Rational& q) {
    double d = q.get_d();
    return {down(d), up(d)};
  }

  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
};

inline Interval operator+(Interval a, Interval b) {
  return {Interval::down(a.lo + b.lo), Interval::up(a.hi + b.hi)};
}

inline Interval operator-(Interval a, Interval b) {
  return {Interval::down(a.lo - b.hi), Interval::up(a.hi - b.lo)};
}

inline Interval operator*(Interval a, Interval b) {
  double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {Interval::down(std::min({p1, p2, p3, p4})), Interval::up(std::max({p1, p2, p3, p4}))};
}

/// Horner enclosure of p over x.
inline Interval eval(const Polynomial& p, Interval x) {
  Interval acc(0.0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Interval::enclose(*it);
  return acc;
}

/// True when the enclosures are disjoint; `sign` is -1 if a lies below b.
inline bool separated(Interval a, Interval b, int& sign) {
  if (a.hi < b.lo) {
    sign = -1;
    return true;
  }
  if (a.lo > b.hi) {
    sign = 1;
    return true;
  }
  return false;
}

}  // namespace lc

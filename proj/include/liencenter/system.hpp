#pragma once

#include <string>

#include "liencenter/poly.hpp"

namespace lc {

/// x' = y, y' = -g(x) - f(x) y with polynomial damping f and restoring
/// force g.
///
/// Both f and g must be nonzero. Structural indices follow the usual
/// convention: g = sum_{i=r}^{m} a_i x^i, f = sum_{i=s}^{n} b_i x^i.
class LienardSystem {
 public:
  LienardSystem(Polynomial f, Polynomial g);
  static LienardSystem parse(std::string_view f_text, std::string_view g_text);

  const Polynomial& f() const { return f_; }
  const Polynomial& g() const { return g_; }

  int r() const { return g_.lowest_power(); }
  int m() const { return g_.degree(); }
  int s() const { return f_.lowest_power(); }
  int n() const { return f_.degree(); }

  Rational a_r() const { return g_.coeff(r()); }
  Rational a_m() const { return g_.leading(); }
  Rational b_s() const { return f_.coeff(s()); }
  Rational b_n() const { return f_.leading(); }

  /// F = int_0^x f, G = int_0^x g.
  const Polynomial& F() const { return F_; }
  const Polynomial& G() const { return G_; }

  /// The system under t -> -t, y -> -y, which is the same family with f
  /// replaced by -f.
  LienardSystem time_reversed() const { return LienardSystem(-f_, g_); }

  std::string describe() const;

 private:
  Polynomial f_;
  Polynomial g_;
  Polynomial F_;
  Polynomial G_;
};

/// x' = y, y' = -(x + a x^3 + x^5) - b x y.
LienardSystem quintic_linear_system(const Rational& a, const Rational& b);
/// x' = y, y' = -(x^3 + x^5) - c x y.
LienardSystem quintic_nilpotent_system(const Rational& c);
/// x' = y, y' = -x - a x^{2k+1} - x y - b x^l y.
LienardSystem odd_family_system(int k, int l, const Rational& a, const Rational& b);

}  // namespace lc

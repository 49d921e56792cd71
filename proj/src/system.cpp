#include "liencenter/system.hpp"

namespace lc {

LienardSystem::LienardSystem(Polynomial f, Polynomial g) : f_(std::move(f)), g_(std::move(g)) {
  if (g_.is_zero()) throw Error(ErrorCode::InvalidArgument, "g must not be identically zero");
  if (f_.is_zero())
    throw Error(ErrorCode::InvalidArgument,
                "f is identically zero (Hamiltonian case is outside the supported family)");
  F_ = antiderivative(f_);
  G_ = antiderivative(g_);
}

LienardSystem LienardSystem::parse(std::string_view f_text, std::string_view g_text) {
  return LienardSystem(parse_polynomial(f_text), parse_polynomial(g_text));
}

std::string LienardSystem::describe() const {
  return "f = " + f_.to_string() + ", g = " + g_.to_string();
}

LienardSystem quintic_linear_system(const Rational& a, const Rational& b) {
  return LienardSystem(Polynomial::monomial(b, 1),
                       Polynomial{0, 1, 0, a, 0, 1});
}

LienardSystem quintic_nilpotent_system(const Rational& c) {
  return LienardSystem(Polynomial::monomial(c, 1), Polynomial{0, 0, 0, 1, 0, 1});
}

LienardSystem odd_family_system(int k, int l, const Rational& a, const Rational& b) {
  if (k < 1 || l < 1) throw Error(ErrorCode::InvalidArgument, "k and l must be >= 1");
  Polynomial g = Polynomial::x() + Polynomial::monomial(a, 2 * k + 1);
  Polynomial f = Polynomial::x() + Polynomial::monomial(b, l);
  return LienardSystem(std::move(f), std::move(g));
}

}  // namespace lc

#include "liencenter/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace lc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::StepUnderflow: return "step-underflow";
    case ErrorCode::MaxSteps: return "max-steps";
    case ErrorCode::Escape: return "escape";
    case ErrorCode::NoReturn: return "no-return";
    case ErrorCode::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::Domain, "non-finite value has no rational form");
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError(0, "empty rational");
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  auto digits = [&](std::size_t from) {
    std::size_t p = from;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    return p;
  };
  std::size_t end = digits(pos);
  if (end == pos) throw ParseError(pos, "expected digits");
  mpz_class num(s.substr(pos, end - pos));
  mpz_class den = 1;
  if (end < s.size() && s[end] == '.') {
    std::size_t fstart = end + 1;
    std::size_t fend = digits(fstart);
    for (std::size_t i = fstart; i < fend; ++i) {
      num = num * 10 + (s[i] - '0');
      den *= 10;
    }
    end = fend;
  } else if (end < s.size() && s[end] == '/') {
    std::size_t dstart = end + 1;
    std::size_t dend = digits(dstart);
    if (dend == dstart) throw ParseError(dstart, "expected denominator");
    den = mpz_class(s.substr(dstart, dend - dstart));
    if (den == 0) throw ParseError(dstart, "zero denominator");
    end = dend;
  }
  if (end != s.size()) throw ParseError(end, "unexpected character");
  Rational q(negative ? -num : num, den);
  q.canonicalize();
  return q;
}

// --- Polynomial -------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(const Rational& c, int power) {
  if (power < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const Rational& Polynomial::leading() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

int Polynomial::lowest_power() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return static_cast<int>(i);
  return -1;
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

long double Polynomial::eval(long double x) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + static_cast<long double>(mpz_class(it->get_num()).get_d()) /
                        static_cast<long double>(mpz_class(it->get_den()).get_d());
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::odd_part() const {
  std::vector<Rational> v(coeffs_.size());
  for (std::size_t i = 1; i < coeffs_.size(); i += 2) v[i] = coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::even_part() const {
  std::vector<Rational> v(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); i += 2) v[i] = coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::reflected() const { return scaled_argument(-1); }

Polynomial Polynomial::scaled_argument(const Rational& k) const {
  std::vector<Rational> v(coeffs_);
  Rational pw = 1;
  for (auto& c : v) {
    c *= pw;
    pw *= k;
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'x';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

std::vector<double> Polynomial::to_doubles() const {
  std::vector<double> v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) v.push_back(c.get_d());
  return v;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::Domain, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> rem(a.coeffs());
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coeffs();
  const Rational& lead = b.leading();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational c = rem[static_cast<std::size_t>(k + b.degree())] / lead;
    quot[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= c * bc[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

namespace {

Polynomial monic(Polynomial p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading();
  return p * inv;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = monic(std::move(r));
  }
  return monic(std::move(x));
}

Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() <= 0) return monic(p);
  Polynomial g = gcd(p, p.derivative());
  return monic(divmod(p, g).first);
}

Polynomial antiderivative(const Polynomial& p) {
  if (p.is_zero()) return {};
  std::vector<Rational> v(p.coeffs().size() + 1);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    v[i + 1] = p.coeffs()[i] / static_cast<long>(i + 1);
  return Polynomial(std::move(v));
}

// --- parsing ----------------------------------------------------------------

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError(pos_, "empty polynomial");
    Polynomial acc;
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = s_[pos_++] == '-';
      skip_ws();
    }
    acc += negate ? -term() : term();
    for (;;) {
      skip_ws();
      if (pos_ == s_.size()) break;
      char op = peek();
      if (op != '+' && op != '-') throw ParseError(pos_, "expected '+' or '-'");
      ++pos_;
      skip_ws();
      Polynomial t = term();
      if (op == '+')
        acc += t;
      else
        acc -= t;
    }
    return acc;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_digit() const { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  mpz_class natural() {
    std::size_t start = pos_;
    while (at_digit()) ++pos_;
    if (start == pos_) throw ParseError(start, "expected digits");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Rational coefficient() {
    mpz_class num = natural();
    mpz_class den = 1;
    if (peek() == '.') {
      ++pos_;
      std::size_t start = pos_;
      while (at_digit()) {
        num = num * 10 + (s_[pos_] - '0');
        den *= 10;
        ++pos_;
      }
      if (start == pos_) throw ParseError(start, "expected digits after '.'");
    } else {
      std::size_t save = pos_;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        std::size_t dpos = pos_;
        den = natural();
        if (den == 0) throw ParseError(dpos, "zero denominator");
      } else {
        pos_ = save;
      }
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  int exponent() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    skip_ws();
    if (peek() == '-') throw ParseError(pos_, "negative exponent");
    std::size_t start = pos_;
    mpz_class e = natural();
    if (e > 100000) throw ParseError(start, "exponent too large");
    return static_cast<int>(e.get_si());
  }

  Polynomial term() {
    if (peek() == 'x') {
      ++pos_;
      return Polynomial::monomial(1, exponent());
    }
    if (!at_digit()) throw ParseError(pos_, "expected coefficient or 'x'");
    Rational c = coefficient();
    std::size_t save = pos_;
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      if (peek() != 'x') throw ParseError(pos_, "expected 'x' after '*'");
    }
    if (peek() == 'x') {
      ++pos_;
      return Polynomial::monomial(c, exponent());
    }
    pos_ = save;
    return Polynomial::constant(c);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

// --- bounds and roots -------------------------------------------------------

Rational cauchy_bound(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "cauchy_bound of the zero polynomial");
  Rational lead = abs(p.leading());
  Rational m = 1;
  for (const auto& c : p.coeffs()) m = std::max(m, Rational(abs(c) / lead));
  return 1 + m;
}

namespace {

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Integer polynomial with the same roots; returns |leading coefficient|.
mpz_class integer_leading(const Polynomial& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, mpz_class(c.get_den()));
  mpz_class content = 0;
  for (const auto& c : p.coeffs()) content = gcd(content, mpz_class(c.get_num() * (l / c.get_den())));
  Rational lead = p.leading() * l / content;
  return abs(mpz_class(lead.get_num()));
}

}  // namespace

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "Sturm sequence of the zero polynomial");
  chain_.push_back(square_free_part(p));
  chain_.push_back(chain_.front().derivative());
  while (!chain_.back().is_zero()) {
    Polynomial r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    chain_.push_back(-r);
  }
  if (chain_.back().is_zero()) chain_.pop_back();
}

int SturmSequence::sign_variations(const Rational& x) const {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain_) {
    int s = sign_of(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  return sign_variations(a) - sign_variations(b);
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_between(hi, lo);
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_between(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share the integer part fl; recurse on the reciprocals.
  Rational inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  Rational r = fl + 1 / inner;
  r.canonicalize();
  return r;
}

std::vector<RootInterval> isolate_real_roots(const Polynomial& p, const Rational& width) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "root isolation of the zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() == 0) return out;
  SturmSequence sturm(p);
  const Polynomial& s = sturm.base();
  mpz_class lead = integer_leading(s);
  // Width below which an interval holds at most one rational with
  // denominator dividing the leading coefficient.
  Rational rational_width(1, lead * lead * 2);
  Rational target = std::min(width, rational_width);

  Rational bound = cauchy_bound(s) + 1;
  struct Pending {
    Rational lo, hi;
  };
  std::vector<Pending> stack{{-bound, bound}};
  std::vector<RootInterval> found;
  while (!stack.empty()) {
    Pending iv = stack.back();
    stack.pop_back();
    int count = sturm.count_roots(iv.lo, iv.hi);
    if (count == 0) continue;
    if (count == 1) {
      Rational lo = iv.lo, hi = iv.hi;
      int slo = sign_of(s(lo));
      bool exact = false;
      while (hi - lo > target) {
        Rational mid = (lo + hi) / 2;
        int sm = sign_of(s(mid));
        if (sm == 0) {
          lo = hi = mid;
          exact = true;
          break;
        }
        if (sm == slo)
          lo = mid;
        else
          hi = mid;
      }
      if (!exact) {
        Rational cand = simplest_between(lo, hi);
        if (s(cand) == 0) {
          lo = hi = cand;
        }
      }
      found.push_back({lo, hi});
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    Rational shift = (iv.hi - iv.lo) / 3;
    while (s(mid) == 0) {
      shift /= 2;
      mid += shift;
    }
    stack.push_back({iv.lo, mid});
    stack.push_back({mid, iv.hi});
  }
  std::sort(found.begin(), found.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return found;
}

SignWitness is_positive_punctured(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "sign test on the zero polynomial");
  const int k = p.lowest_power();
  Polynomial q(std::vector<Rational>(p.coeffs().begin() + k, p.coeffs().end()));
  const Rational q0 = q.coeff(0);

  if (k % 2 == 1 || q0 < 0) {
    // p changes sign at 0 or is negative next to it; step inside the smallest
    // root magnitude of q, bounded below by 1/cauchy_bound(reversed q).
    std::vector<Rational> rev(q.coeffs().rbegin(), q.coeffs().rend());
    Rational t = 1 / (2 * cauchy_bound(Polynomial(std::move(rev))));
    Rational x = p(t) <= 0 ? t : Rational(-t);
    return {false, x, true, std::nullopt};
  }

  if (q.degree() == 0) return {true, std::nullopt, true, std::nullopt};
  std::vector<RootInterval> roots = isolate_real_roots(q);
  if (roots.empty()) return {true, std::nullopt, true, std::nullopt};
  // Report positive roots first, then negative ones nearest zero first.
  auto first_neg = std::stable_partition(roots.begin(), roots.end(),
                                         [](const RootInterval& r) { return r.lo >= 0; });
  std::reverse(first_neg, roots.end());

  for (const auto& root : roots)
    if (root.exact()) return {false, root.lo, true, std::nullopt};
  for (const auto& root : roots) {
    if (p(root.lo) <= 0) return {false, root.lo, true, std::nullopt};
    if (p(root.hi) <= 0) return {false, root.hi, true, std::nullopt};
  }
  // Only irrational roots of even multiplicity remain: p >= 0 with equality
  // at an irrational point. Report a tight bracket.
  RootInterval tight = isolate_real_roots(q, Rational(1, mpz_class(1) << 48)).front();
  Rational mid = (tight.lo + tight.hi) / 2;
  return {false, mid, false, std::make_pair(tight.lo, tight.hi)};
}

}  // namespace lc

#include "liencenter/branches.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "liencenter/criteria.hpp"
#include "liencenter/interval.hpp"
#include "liencenter/parallel.hpp"

namespace lc::branches {

const char* to_string(IvStatus s) {
  switch (s) {
    case IvStatus::HoldsExact: return "holds-exact";
    case IvStatus::HoldsNumeric: return "holds-numeric";
    case IvStatus::Fails: return "fails";
  }
  return "?";
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::F1LessF2: return "F1<F2";
    case Direction::F1GreaterF2: return "F1>F2";
    case Direction::Identical: return "identical";
  }
  return "?";
}

const char* to_string(Boundedness b) {
  switch (b) {
    case Boundedness::PositivelyBounded: return "positively_bounded";
    case Boundedness::NegativelyBounded: return "negatively_bounded";
    case Boundedness::AllBounded: return "all_bounded";
  }
  return "?";
}

BranchContext::BranchContext(const LienardSystem& sys) : sys_(sys), r_(sys.r()) {
  SignWitness w = is_positive_punctured(Polynomial::x() * sys.g());
  if (!w.verdict)
    throw Error(ErrorCode::InvalidArgument, "branch inversion requires x g(x) > 0 for x != 0");
  const double bound = cauchy_bound(sys.g()).get_d();
  bracket0_ = bound;
  x_max_ = 10.0 * bound;
  level_max_ = std::max(sys.G().eval(-x_max_), sys.G().eval(x_max_));
  w_max_ = w_of_x(*this, x_max_);
}

double w_of_x(const BranchContext& ctx, double x) {
  const long double k = ctx.r() + 1;
  long double v = k * ctx.G().eval(static_cast<long double>(x));
  if (v <= 0.0L) return 0.0;
  return static_cast<double>(std::pow(v, 1.0L / k));
}

double invert_branch(const BranchContext& ctx, double level, Side side) {
  if (!(level >= 0.0) || !std::isfinite(level))
    throw Error(ErrorCode::InvalidArgument, "inversion level must be finite and non-negative");
  if (level == 0.0) return 0.0;
  const Polynomial& G = ctx.G();
  const Polynomial& g = ctx.system().g();
  const long double sign = side == Side::Pos ? 1.0L : -1.0L;
  const long double target = level;
  auto h = [&](long double t) { return G.eval(sign * t) - target; };

  // Bracket the magnitude t: h(lo) < 0 <= h(hi).
  long double lo = 0.0L, hi = ctx.bracket0();
  for (int guard = 0; h(hi) < 0.0L; ++guard) {
    if (guard > 4000)
      throw Error(ErrorCode::NonConvergence, "could not bracket level " + std::to_string(level));
    lo = hi;
    hi *= 2.0L;
  }

  for (int it = 0; it < 200 && hi - lo > 1e-6L * hi; ++it) {
    long double mid = 0.5L * (lo + hi);
    if (h(mid) < 0.0L)
      lo = mid;
    else
      hi = mid;
  }

  // Safeguarded Newton polish.
  long double t = 0.5L * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    long double ht = h(t);
    if (ht == 0.0L) break;
    if (ht < 0.0L)
      lo = t;
    else
      hi = t;
    long double slope = sign * g.eval(sign * t);
    long double next = slope != 0.0L ? t - ht / slope : 0.5L * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
    const bool done = std::fabs(next - t) <= 1e-18L * t;
    t = next;
    if (done) break;
  }

  const double x = static_cast<double>(sign * t);
  const long double residual = std::fabs(G.eval(static_cast<long double>(x)) - target);
  if (residual > 1e-14L * (1.0L + target))
    throw Error(ErrorCode::NonConvergence,
                "inversion residual " + std::to_string(static_cast<double>(residual)) +
                    " at level " + std::to_string(level) + ", bracket [" +
                    std::to_string(static_cast<double>(lo)) + ", " +
                    std::to_string(static_cast<double>(hi)) + "]");
  return x;
}

BranchPoint branch_point(const BranchContext& ctx, double level) {
  BranchPoint bp;
  if (level <= 0.0) return bp;
  const long double k = ctx.r() + 1;
  bp.w = static_cast<double>(std::pow(k * level, 1.0L / k));
  bp.x1 = invert_branch(ctx, level, Side::Neg);
  bp.x2 = invert_branch(ctx, level, Side::Pos);
  bp.F1 = static_cast<double>(ctx.F().eval(static_cast<long double>(bp.x1)));
  bp.F2 = static_cast<double>(ctx.F().eval(static_cast<long double>(bp.x2)));
  return bp;
}

std::optional<int> certified_difference_sign(const BranchContext& ctx, double x2) {
  if (!(x2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "x2 must be positive");
  const Polynomial& G = ctx.G();
  const Polynomial& F = ctx.F();
  const Rational X2 = rational_from_double(x2);
  const Rational level = G(X2);
  const Interval F2 = Interval::enclose(F(X2));

  double x1 = invert_branch(ctx, level.get_d(), Side::Neg);
  // G is decreasing on x <= 0: want G(lo) >= level >= G(hi), lo < hi <= 0.
  auto G_at = [&](double x) { return G(rational_from_double(x)); };
  double delta = 1e-13 * (1.0 + std::fabs(x1));
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (int it = 0; it < 80; ++it, delta *= 8.0) {
    lo = x1 - delta;
    hi = std::min(x1 + delta, 0.0);
    if (G_at(lo) >= level && G_at(hi) <= level) {
      bracketed = true;
      break;
    }
  }
  if (!bracketed) return std::nullopt;

  for (int it = 0; it < 80; ++it) {
    int sign = 0;
    if (separated(eval(F, Interval(lo, hi)), F2, sign)) return sign;
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (G_at(mid) >= level)
      lo = mid;
    else
      hi = mid;
  }
  return std::nullopt;
}

bool is_function_of(const Polynomial& F, const Polynomial& G) {
  if (G.degree() < 1) return F.degree() <= 0;
  std::vector<Polynomial> powers{Polynomial::constant(1)};
  Polynomial R = F;
  while (R.degree() >= 1) {
    if (R.degree() % G.degree() != 0) return false;
    const auto k = static_cast<std::size_t>(R.degree() / G.degree());
    while (powers.size() <= k) powers.push_back(powers.back() * G);
    Rational c = R.leading() / powers[k].leading();
    R -= powers[k] * c;
  }
  return true;
}

namespace {

std::vector<double> sample_levels(const BranchContext& ctx, const ToleranceOptions& opts) {
  const std::size_t n = std::max<std::size_t>(opts.samples, 1);
  std::vector<double> levels(n);
  const double top = ctx.level_max();
  for (std::size_t k = 0; k < n; ++k) {
    double frac = n == 1 ? 0.0 : static_cast<double>(n - 1 - k) / static_cast<double>(n - 1);
    levels[k] = top * std::pow(10.0, -opts.decades * frac);
  }
  return levels;
}

std::vector<BranchPoint> sample_points(const BranchContext& ctx, const std::vector<double>& levels) {
  std::vector<BranchPoint> pts(levels.size());
  parallel_for(levels.size(), [&](std::size_t k) { pts[k] = branch_point(ctx, levels[k]); });
  return pts;
}

double agreement_scale(const BranchPoint& bp, double tol_rel) {
  return tol_rel * (1.0 + std::max(std::fabs(bp.F1), std::fabs(bp.F2)));
}

int significant_sign(const BranchPoint& bp, double tol_rel) {
  double d = bp.F1 - bp.F2;
  if (std::fabs(d) <= agreement_scale(bp, tol_rel)) return 0;
  return d < 0 ? -1 : 1;
}

// A positive abscissa where the odd part of F does not vanish.
Rational parity_witness(const Polynomial& odd_part_of_F) {
  for (long k = 1;; ++k) {
    for (Rational cand : {Rational(k), Rational(1, k)}) {
      if (odd_part_of_F(cand) != 0) return cand;
    }
  }
}

}  // namespace

IvResult check_condition_iv(const BranchContext& ctx, const ToleranceOptions& opts) {
  const LienardSystem& sys = ctx.system();
  IvResult res;
  if (opts.use_shortcuts) {
    if (sys.g().is_odd()) {
      // G is even, so G(x1) = G(x2) forces x1 = -x2.
      res.method = "parity";
      if (sys.f().is_odd()) {
        res.status = IvStatus::HoldsExact;
        return res;
      }
      Rational X2 = parity_witness(sys.F().odd_part());
      BranchPoint bp;
      bp.x2 = X2.get_d();
      bp.x1 = -bp.x2;
      bp.w = w_of_x(ctx, bp.x2);
      bp.F1 = sys.F()(Rational(-X2)).get_d();
      bp.F2 = sys.F()(X2).get_d();
      res.status = IvStatus::Fails;
      res.counterexample = bp;
      return res;
    }
    if (is_function_of(sys.F(), sys.G())) {
      res.method = "functional";
      res.status = IvStatus::HoldsExact;
      return res;
    }
  }

  res.method = "sampling";
  const auto levels = sample_levels(ctx, opts);
  const auto pts = sample_points(ctx, levels);
  res.samples_used = pts.size();
  for (const auto& bp : pts) {
    if (significant_sign(bp, opts.tol_rel) == 0) continue;
    if (certified_difference_sign(ctx, bp.x2)) {
      res.status = IvStatus::Fails;
      res.counterexample = bp;
      return res;
    }
  }
  res.status = IvStatus::HoldsNumeric;
  return res;
}

WHat find_w_hat(const BranchContext& ctx, const ToleranceOptions& opts) {
  const auto levels = sample_levels(ctx, opts);
  const auto pts = sample_points(ctx, levels);
  std::vector<int> signs(pts.size());
  bool any = false;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    signs[k] = significant_sign(pts[k], opts.tol_rel);
    any = any || signs[k] != 0;
  }
  if (!any) return {0.0, Direction::Identical};

  // Asymptotic sign, certified at the top level and ten times beyond it.
  const auto top = certified_difference_sign(ctx, pts.back().x2);
  const double far_x2 = invert_branch(ctx, 10.0 * levels.back(), Side::Pos);
  const auto far = certified_difference_sign(ctx, far_x2);
  if (!top || !far || *top != *far)
    throw Error(ErrorCode::Inconclusive,
                "sign of F1 - F2 is not settled at the two largest scales; raise the sample budget");
  const int s_top = *top;
  const Direction dir = s_top < 0 ? Direction::F1LessF2 : Direction::F1GreaterF2;

  // Largest sampled sign change.
  std::size_t k_opp = pts.size();
  for (std::size_t k = pts.size(); k-- > 0;) {
    if (signs[k] == -s_top) {
      k_opp = k;
      break;
    }
  }
  if (k_opp == pts.size()) return {0.0, dir};
  std::size_t k_same = pts.size() - 1;
  for (std::size_t k = k_opp + 1; k < pts.size(); ++k) {
    if (signs[k] == s_top) {
      k_same = k;
      break;
    }
  }

  const double k1 = ctx.r() + 1;
  auto diff_sign = [&](double w) {
    BranchPoint bp = branch_point(ctx, std::pow(w, k1) / k1);
    double d = bp.F1 - bp.F2;
    return d < 0 ? -1 : (d > 0 ? 1 : 0);
  };
  double w_lo = pts[k_opp].w;
  double w_hi = pts[k_same].w;
  for (int it = 0; it < 200 && w_hi - w_lo > 1e-10 * std::max(1.0, w_hi); ++it) {
    double mid = 0.5 * (w_lo + w_hi);
    if (diff_sign(mid) == s_top)
      w_hi = mid;
    else
      w_lo = mid;
  }
  return {0.5 * (w_lo + w_hi), dir};
}

Boundedness boundedness_direction(const BranchContext& ctx, const ToleranceOptions& opts) {
  if (!criteria::check_condition_iii(ctx.system()).pass)
    throw Error(ErrorCode::InvalidArgument, "boundedness direction requires condition (iii)");
  IvResult iv = check_condition_iv(ctx, opts);
  if (iv.status != IvStatus::Fails) return Boundedness::AllBounded;
  WHat wh = find_w_hat(ctx, opts);
  switch (wh.direction) {
    case Direction::F1LessF2: return Boundedness::PositivelyBounded;
    case Direction::F1GreaterF2: return Boundedness::NegativelyBounded;
    case Direction::Identical: return Boundedness::AllBounded;
  }
  return Boundedness::AllBounded;
}

}  // namespace lc::branches

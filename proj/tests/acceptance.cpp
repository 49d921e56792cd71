// Acceptance gate: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "liencenter/branches.hpp"
#include "liencenter/criteria.hpp"
#include "liencenter/flow.hpp"
#include "liencenter/infinity.hpp"
#include "liencenter/render.hpp"
#include "liencenter/report.hpp"

using namespace lc;
using criteria::VerdictKind;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> kSeeds{0.5, 5.0, 50.0};

std::vector<LienardSystem> linear_grid() {
  std::vector<LienardSystem> out;
  for (Rational a : {Rational(-19, 10), Rational(0), Rational(5)})
    for (Rational b : {Rational(-3), Rational(1, 10), Rational(2)}) out.push_back(quintic_linear_system(a, b));
  return out;
}

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& s : linear_grid()) {
    auto chk = report::check_report(s, {});
    o.require(chk["verdict"]["kind"] == "GlobalCenterLinear", "check verdict for " + s.describe());
    report::VerifyOptions vo;
    vo.seeds = kSeeds;
    auto v = report::verify_report(s, {}, vo);
    for (const auto& p : v["oracle"]["probes"]) {
      o.require(!p["error"].is_null(), "no return for " + s.describe());
      if (p["error"].is_null()) continue;
      const double e = p["error"].get<double>();
      worst = std::max(worst, e);
      o.require(e < 1e-6, "closure error " + fmt("%.3g", e) + " for " + s.describe());
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "runtime " + fmt("%.1f s", secs));
  if (o.pass) o.detail = "9 systems GlobalCenterLinear, worst closure error " + fmt("%.2e", worst);
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  for (Rational c : {Rational(-14, 5), Rational(-1), Rational(1), Rational(14, 5)}) {
    auto s = quintic_nilpotent_system(c);
    o.require(criteria::decide_global_center(s).kind == VerdictKind::GlobalCenterNilpotent,
              "verdict for c = " + to_string(c));
    report::VerifyOptions vo;
    vo.seeds = kSeeds;
    auto oracle = report::run_oracle(s, criteria::decide_global_center(s), vo);
    for (const auto& p : oracle.probes) {
      o.require(p.error.has_value() && *p.error < 1e-6, "closure at c = " + to_string(c));
      if (p.error) worst = std::max(worst, *p.error);
    }
  }
  std::string open_detail;
  for (int c : {-3, 3}) {
    auto s = quintic_nilpotent_system(c);
    auto v = criteria::decide_global_center(s);
    o.require(v.kind == VerdictKind::NotGlobalCenter && v.reason == "ii_star",
              "c = " + std::to_string(c) + " not rejected by (ii*)");
    report::VerifyOptions vo;
    vo.seeds = {1.0};
    auto oracle = report::run_oracle(s, v, vo);
    // A probe that never returns is an open orbit arc.
    bool open = false;
    for (const auto& p : oracle.probes) {
      if (!p.error || *p.error > 1e-3) open = true;
      open_detail += " c=" + std::to_string(c) + (p.lower ? " lower:" : " upper:") + p.outcome;
    }
    o.require(!oracle.closed && open, "c = " + std::to_string(c) + " closes at y0 = 1");
  }
  if (o.pass) o.detail = "worst nilpotent closure " + fmt("%.2e", worst) + ";" + open_detail;
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    Rational eps(1, 4 * n + 4);
    Polynomial f = Polynomial::monomial(1, n);
    LienardSystem at(f, Polynomial::x() + Polynomial::monomial(eps, 2 * n + 1));
    LienardSystem above(f, Polynomial::x() + Polynomial::monomial(eps + Rational(1, 1000000000), 2 * n + 1));
    o.require(!criteria::check_condition_iii(at).pass, "(iii) passes at the threshold, n = " + std::to_string(n));
    o.require(criteria::check_condition_iii(above).pass, "(iii) fails above the threshold, n = " + std::to_string(n));
  }
  if (o.pass) o.detail = "n = 1,2,3: fails at 1/(4n+4), passes at 1/(4n+4) + 1e-9";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> kl(1, 4), an(1, 30), bn(-30, 30), den(1, 10);
  int members = 0, total = 0;
  while (total < 200) {
    const int k = kl(rng), l = kl(rng);
    Rational a(an(rng), den(rng)), b(bn(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (a > 3 || b < -3 || b > 3) continue;
    // f = (1 + b) x vanishes identically: not a Lienard system.
    if (l == 1 && b == -1) continue;
    ++total;
    auto space = criteria::family_membership(k, l, a, b);
    auto v = criteria::decide_global_center(odd_family_system(k, l, a, b));
    const bool gc = v.kind == VerdictKind::GlobalCenterLinear || v.kind == VerdictKind::GlobalCenterNilpotent;
    o.require(v.kind != VerdictKind::NumericInconclusive, "inconclusive verdict");
    o.require(gc == space.has_value(), "mismatch at (k,l,a,b) = (" + std::to_string(k) + "," + std::to_string(l) + "," +
                                           to_string(a) + "," + to_string(b) + ")");
    members += space.has_value();
  }
  if (o.pass) o.detail = "200 tuples agree (" + std::to_string(members) + " members)";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-4, 4), fdeg(1, 7), coin(0, 1);
  int disagreements = 0, odd_f = 0;
  for (int i = 0; i < 100; ++i) {
    // g = x (1 + h(x^2)^2) is odd and x g > 0 off the origin.
    Polynomial h{coef(rng), 0, coef(rng)};
    Polynomial g = Polynomial::x() * (Polynomial::constant(1) + h * h);
    std::vector<Rational> fc(fdeg(rng) + 1);
    const bool force_odd = coin(rng);
    for (std::size_t j = 0; j < fc.size(); ++j) fc[j] = (force_odd && j % 2 == 0) ? 0 : coef(rng);
    Polynomial f(fc);
    if (f.is_zero()) f = Polynomial::x();
    LienardSystem s(f, g);
    const bool parity = f.is_odd();
    odd_f += parity;
    branches::BranchContext ctx(s);
    auto exact = branches::check_condition_iv(ctx);
    branches::ToleranceOptions raw;
    raw.use_shortcuts = false;
    auto sampled = branches::check_condition_iv(ctx, raw);
    if ((exact.status != branches::IvStatus::Fails) != parity) ++disagreements;
    if ((sampled.status != branches::IvStatus::Fails) != parity) ++disagreements;
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  if (o.pass) o.detail = "100 systems (" + std::to_string(odd_f) + " with odd f), shortcut and sampling routes agree with parity";
  return o;
}

Outcome criterion6() {
  Outcome o;
  int combos = 0;
  std::vector<int> regimes(5, 0);
  for (int n = 1; n <= 5; ++n) {
    const Rational t(1, 4 * n + 4);
    struct Entry {
      int m;
      Rational eps;
    };
    std::vector<Entry> entries{{2 * n, 1},          {2 * n, -1},     {2 * n - 1, 1},     {2 * n - 1, -1},
                               {2 * n + 1, -1},     {2 * n + 1, t / 2}, {2 * n + 1, t},  {2 * n + 1, t + Rational(1, 1000000000)},
                               {2 * n + 2, 1},      {2 * n + 2, -1}, {2 * n + 3, 1},     {2 * n + 3, -1}};
    for (const auto& [m, eps] : entries) {
      Polynomial g = m == 1 ? Polynomial::monomial(eps, 1) : Polynomial::x() + Polynomial::monomial(eps, m);
      LienardSystem s(Polynomial::monomial(1, n), g);
      auto idx = infinity::normalize(s);
      regimes[static_cast<int>(idx.regime)]++;
      const bool table = infinity::classify_infinity(idx).connection_at_infinity;
      const bool ineq = !criteria::check_condition_iii(s).pass;
      o.require(table == ineq, "disagreement at m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                   " eps=" + to_string(eps));
      ++combos;
    }
  }
  o.require(combos == 60, "grid size");
  for (int r : regimes) o.require(r > 0, "a regime is not covered");
  if (o.pass) o.detail = "60 (m,n,eps) combinations, all regimes covered, zero disagreements";
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto s = LienardSystem::parse("x^2", "x + x^5");
  auto rs = s.time_reversed();
  o.require(branches::boundedness_direction(branches::BranchContext(s)) == branches::Boundedness::PositivelyBounded,
            "forward direction");
  o.require(branches::boundedness_direction(branches::BranchContext(rs)) == branches::Boundedness::NegativelyBounded,
            "reversed direction");
  auto t0 = std::chrono::steady_clock::now();
  auto fwd = flow::escape_probe(s, 100.0, 20);
  const double t_fwd = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  auto bwd = flow::escape_probe(rs, 100.0, 20);
  const double t_bwd = seconds_since(t0);
  o.require(fwd.bounded && fwd.completed, "forward probe did not stay bounded over 20 crossings");
  o.require(!bwd.bounded, "reversed probe did not escape");
  o.require(t_fwd < 10.0 && t_bwd < 10.0, "probe runtime");
  if (o.pass)
    o.detail = "positively/negatively bounded; forward bounded over 20 crossings (" + fmt("%.3f s", t_fwd) +
               "), reversed escapes after " + std::to_string(bwd.crossings.size()) + " crossings (" +
               fmt("%.3f s", t_bwd) + ")";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> coef(-3, 3), hdeg(0, 2), pos(1, 4), coin(0, 1), fdeg(1, 4);
  double worst_g = 0.0, worst_w = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int r = coin(rng) ? 1 : 3;
    std::vector<Rational> hc(hdeg(rng) + 1);
    for (auto& c : hc) c = coef(rng);
    Polynomial h(hc);
    Polynomial g = Polynomial::monomial(1, r) * (Polynomial::constant(Rational(pos(rng), 2)) + h * h);
    std::vector<Rational> fc(fdeg(rng) + 1);
    for (auto& c : fc) c = coef(rng);
    fc.back() = pos(rng);
    LienardSystem s(Polynomial(fc), g);
    branches::BranchContext ctx(s);
    const int r1 = ctx.r() + 1;
    std::uniform_real_distribution<double> expo(-12.0, std::log10(ctx.level_max()));
    for (int i = 0; i < 1000; ++i) {
      const double c = std::pow(10.0, expo(rng));
      const double w = std::pow(r1 * c, 1.0 / r1);
      for (auto side : {branches::Side::Neg, branches::Side::Pos}) {
        const double x = branches::invert_branch(ctx, c, side);
        worst_g = std::max(worst_g, std::fabs(s.G().eval(x) - c) / (1.0 + c));
        worst_w = std::max(worst_w, std::fabs(branches::w_of_x(ctx, x) - w) / (1.0 + w));
      }
    }
  }
  o.require(worst_g <= 1e-12, "G(invert(c)) residual " + fmt("%.3g", worst_g));
  o.require(worst_w <= 1e-12, "w residual " + fmt("%.3g", worst_w));
  if (o.pass) o.detail = "20 systems x 1000 levels, max residuals G " + fmt("%.2e", worst_g) + ", w " + fmt("%.2e", worst_w);
  return o;
}

Outcome criterion9() {
  Outcome o;
  double worst = 0.0;
  for (const auto& s : linear_grid()) {
    render::PortraitSpec sp{s};
    sp.seed_radii = {0.5, 1.0, 2.0, 4.0};
    o.require(render::render_portrait(sp) == render::render_portrait(sp), "SVG differs across runs for " + s.describe());
    for (const auto& p : render::trace_orbits(sp)) {
      o.require(!p.failed && !p.points.empty(), "orbit failed: " + p.note);
      if (p.points.empty()) continue;
      const auto &a = p.points.front(), &b = p.points.back();
      const double gap = std::hypot(a[0] - b[0], a[1] - b[1]);
      worst = std::max(worst, gap);
      o.require(gap <= 1.0, "orbit gap " + fmt("%.3g px", gap));
    }
  }
  if (o.pass) o.detail = "byte-identical SVG; worst closure gap " + fmt("%.2e px", worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = seconds_since(t0) * 1e3;
    std::printf("[%s] criterion %zu: %s (%.0f ms)\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), ms);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "liencenter/branches.hpp"
#include "liencenter/flow.hpp"

using namespace lc;
using flow::IntegratorConfig;
using flow::Termination;

namespace {

LienardSystem sys(const char* f, const char* g) { return LienardSystem::parse(f, g); }

flow::State at_time(const flow::Trajectory& tr, double t) {
  for (const auto& st : tr.steps)
    if (t >= std::min(st.t0, st.t1()) && t <= std::max(st.t0, st.t1())) return st.at(t);
  FAIL("time outside trajectory");
  return {};
}

}  // namespace

TEST_CASE("integrate examples") {
  auto near = flow::integrate(sys("x", "x"), {0.0, 1e-6}, 0.0, 10.0);
  CHECK(near.reason == Termination::EndTime);
  for (const auto& p : near.samples(4)) CHECK(std::hypot(p[1], p[2]) < 2e-6);

  auto q = flow::integrate(quintic_linear_system(0, 1), {0.0, 1.0}, 0.0, 20.0);
  bool left = false, returned = false;
  for (const auto& st : q.steps) {
    if (st.end()[0] < -0.1) left = true;
    if (left && flow::upward_crossing(st, 1e-12)) {
      returned = true;
      CHECK(st.at(*flow::upward_crossing(st, 1e-12))[1] > 0.0);
      break;
    }
  }
  CHECK(returned);

  auto esc = flow::integrate(sys("x", "x"), {0.0, 1e7}, 0.0, 1.0);
  CHECK(esc.reason == Termination::Escape);
  CHECK(esc.steps.empty());
  CHECK(esc.t_end == 0.0);

  CHECK_THROWS_AS(flow::integrate(sys("x", "x"), {NAN, 0.0}, 0.0, 1.0), Error);
  IntegratorConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(flow::integrate(sys("x", "x"), {0.0, 1.0}, 0.0, 1.0, bad), Error);
}

TEST_CASE("max steps terminates") {
  IntegratorConfig cfg;
  cfg.max_steps = 10;
  auto tr = flow::integrate(sys("x", "x"), {0.0, 1.0}, 0.0, 1e3, cfg);
  CHECK(tr.reason == Termination::MaxSteps);
  CHECK(tr.steps.size() == 10);
}

TEST_CASE("dense output matches the step endpoints") {
  auto tr = flow::integrate(sys("x + x^2", "x + x^3"), {0.0, 1.0}, 0.0, 5.0);
  REQUIRE(tr.steps.size() > 3);
  for (const auto& st : tr.steps) {
    auto a = st.at(st.t0), b = st.at(st.t1());
    CHECK(a == st.start());
    CHECK(b[0] == doctest::Approx(st.end()[0]).epsilon(1e-12));
    CHECK(b[1] == doctest::Approx(st.end()[1]).epsilon(1e-12));
  }
}

TEST_CASE("return map examples") {
  CHECK(std::fabs(flow::return_map(quintic_linear_system(1, 1), 1.0).y - 1.0) < 1e-6);
  CHECK(std::fabs(flow::return_map(quintic_nilpotent_system(2), 5.0).y - 5.0) < 1e-6);
  // Regression value for a system failing (iv).
  auto open = flow::return_map(sys("x + x^2", "x + x^3"), 1.0);
  CHECK(std::fabs(open.y - 1.0) > 1e-3);
  CHECK(open.y - 1.0 == doctest::Approx(-0.2987).epsilon(1e-3));
  CHECK(open.t > 0.0);
  CHECK_THROWS_AS(flow::return_map(sys("x", "x"), 0.0), Error);
  CHECK_THROWS_AS(flow::return_map(sys("x", "x"), -1.0), Error);
}

TEST_CASE("return map failures are typed") {
  // Unstable linear focus: the orbit escapes before it returns.
  IntegratorConfig cfg;
  cfg.escape_radius = 10.0;
  try {
    flow::return_map(sys("-1", "x"), 1.0, cfg);
    FAIL("expected escape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Escape);
  }
  cfg = {};
  cfg.max_steps = 5;
  try {
    flow::return_map(sys("x", "x"), 1.0, cfg);
    FAIL("expected max steps");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaxSteps);
  }
}

TEST_CASE("closure test") {
  const double ys[] = {0.5, 5.0, 50.0};
  auto c = flow::closure_test(quintic_linear_system(0, 2), ys);
  CHECK(c.closed);
  CHECK(c.errors.size() == 3);
  CHECK(c.max_error < 1e-6);
  const double one[] = {1.0};
  CHECK_FALSE(flow::closure_test(sys("x^2", "x + x^5"), one).closed);
  auto empty = flow::closure_test(sys("x^2", "x + x^5"), std::span<const double>{});
  CHECK(empty.closed);
  CHECK(empty.max_error == 0.0);
}

TEST_CASE("escape probe") {
  auto s = sys("x^2", "x + x^5");
  auto fwd = flow::escape_probe(s, 100.0, 20);
  CHECK(fwd.bounded);
  CHECK(fwd.completed);
  CHECK(fwd.crossings.size() == 20);
  // Non-increasing after the first arc.
  for (std::size_t i = 2; i < fwd.radii.size(); ++i) CHECK(fwd.radii[i] <= fwd.radii[i - 1] * (1 + 1e-9));
  for (std::size_t i = 1; i < fwd.crossings.size(); ++i) CHECK(fwd.crossings[i].t > fwd.crossings[i - 1].t);

  CHECK_FALSE(flow::escape_probe(s.time_reversed(), 100.0, 20).bounded);

  auto center = flow::escape_probe(quintic_linear_system(1, 1), 100.0, 20);
  CHECK(center.bounded);
  REQUIRE(center.radii.size() >= 2);
  for (double r : center.radii) CHECK(std::fabs(r - center.radii.front()) <= 1e-6 * center.radii.front());
}

TEST_CASE("half turns and two-sided closure") {
  auto s = sys("1", "x");
  auto fwd = flow::half_turn(s, 1.0, 1);
  auto bwd = flow::half_turn(s, 1.0, -1);
  CHECK(fwd.t > 0.0);
  CHECK(bwd.t < 0.0);
  CHECK(fwd.y < 0.0);
  CHECK(bwd.y < 0.0);
  // Damped linear oscillator: the backward arc lands farther out.
  CHECK(bwd.y < fwd.y);
  CHECK(flow::two_sided_closure(s, 1.0).error > 1e-3);
  CHECK(flow::two_sided_closure(sys("x", "x + x^3"), -2.0).error < 1e-9);
  CHECK_THROWS_AS(flow::half_turn(s, 0.0, 1), Error);
  CHECK_THROWS_AS(flow::half_turn(s, 1.0, 0), Error);
}

namespace {

std::vector<LienardSystem> center_grid() {
  std::vector<LienardSystem> out;
  for (Rational a : {Rational(-19, 10), Rational(0), Rational(5)})
    for (Rational b : {Rational(-3), Rational(1, 10), Rational(2)}) out.push_back(quintic_linear_system(a, b));
  for (Rational c : {Rational(-14, 5), Rational(-1), Rational(1), Rational(14, 5)}) out.push_back(quintic_nilpotent_system(c));
  return out;
}

}  // namespace

TEST_CASE("property: closure of global centers in both time directions") {
  const double ys[] = {0.5, 5.0, 50.0};
  for (const auto& s : center_grid()) {
    CAPTURE(s.describe());
    CHECK(flow::closure_test(s, ys).max_error < 1e-6);
    for (double y0 : ys) {
      CHECK(flow::two_sided_closure(s.time_reversed(), y0).error < 1e-6);
      CHECK(flow::two_sided_closure(s, -y0).error < 1e-6);
    }
  }
}

TEST_CASE("reversed return map is ill-conditioned along a repelling slow manifold") {
  // a = -1.9, b = -3 reversed: from (0, 5) the orbit tracks x' ~ -g/3 past
  // x = 1 (g small there), then the mirrored repelling branch, so step errors
  // are amplified by roughly e^30. The computed return does not converge as
  // the tolerance shrinks, while the two-sided test closes.
  auto s = quintic_linear_system(Rational(-19, 10), -3).time_reversed();
  IntegratorConfig loose, tight;
  loose.rel_tol = 1e-9;
  tight.rel_tol = 1e-12;
  tight.abs_tol = 1e-14;
  const double a = flow::return_map(s, 5.0, loose).y, b = flow::return_map(s, 5.0, tight).y;
  CHECK(std::fabs(a - b) > 0.1);
  CHECK(flow::two_sided_closure(s, 5.0).error < 1e-9);
}

TEST_CASE("property: section crossing is stable under halving rel_tol") {
  struct Case {
    LienardSystem s;
    double y0;
  };
  for (const auto& [s, y0] : {Case{quintic_linear_system(1, 1), 1.0}, Case{quintic_nilpotent_system(2), 5.0},
                              Case{sys("x + x^2", "x + x^3"), 1.0}}) {
    // Global error is about rel_tol / 2 here, so the baseline sits well below
    // the default for the change to resolve the event tolerance.
    IntegratorConfig a, b;
    a.rel_tol = 1e-12;
    a.abs_tol = 1e-14;
    b = a;
    b.rel_tol = a.rel_tol / 2;
    const double ya = flow::return_map(s, y0, a).y, yb = flow::return_map(s, y0, b).y;
    CHECK(std::fabs(ya - yb) <= 10 * a.event_tol);
  }
}

TEST_CASE("energy oracle at small amplitude") {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-15;
  auto r = flow::return_map(sys("x", "x + x^3"), 1e-3, cfg);
  CHECK(std::fabs(r.y - 1e-3) < 1e-12);
}

TEST_CASE("w-plane equivalence along an orbit") {
  // With Y = y + F(x), dw/dY = (F(x) - Y) / w^r on each branch.
  auto s = sys("x + x^2", "x + x^3");
  branches::BranchContext ctx(s);
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-15;
  auto tr = flow::integrate(s, {0.0, 1.0}, 0.0, 6.0, cfg);
  REQUIRE(tr.reason == Termination::EndTime);
  const double h = 1e-3;
  auto wY = [&](double t) {
    auto p = at_time(tr, t);
    return std::array<double, 3>{branches::w_of_x(ctx, p[0]), p[1] + s.F().eval(p[0]), p[0]};
  };
  auto d5 = [&](int k, double t) {
    return (-wY(t + 2 * h)[k] + 8 * wY(t + h)[k] - 8 * wY(t - h)[k] + wY(t - 2 * h)[k]) / (12 * h);
  };
  int checked = 0;
  for (double t = 0.1; t < 5.9; t += 0.05) {
    auto [w, Y, x] = wY(t);
    if (w < 0.1) continue;
    const double lhs = d5(0, t) / d5(1, t);
    const double rhs = (s.F().eval(x) - Y) / std::pow(w, ctx.r());
    CHECK(std::fabs(lhs - rhs) < 1e-6 * std::max(1.0, std::fabs(rhs)));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("csv dump") {
  auto tr = flow::integrate(sys("x", "x"), {0.0, 1.0}, 0.0, 0.5);
  std::ostringstream os;
  flow::write_csv(tr, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,x,y");
  std::getline(is, line);
  CHECK(line == "0,0,1");
  std::size_t rows = 1;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == tr.steps.size() + 1);
}

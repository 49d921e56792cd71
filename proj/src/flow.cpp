#include "liencenter/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace lc::flow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double radius(const State& s) { return std::hypot(s[0], s[1]); }

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::EndTime: return "end-time";
    case Termination::Escape: return "escape";
    case Termination::MaxSteps: return "max-steps";
    case Termination::Stopped: return "stopped";
  }
  return "?";
}

State DenseStep::end() const {
  return {rcont[0][0] + rcont[1][0], rcont[0][1] + rcont[1][1]};
}

State DenseStep::at(double t) const {
  const double s = h == 0.0 ? 0.0 : (t - t0) / h;
  const double s1 = 1.0 - s;
  State out;
  for (int i = 0; i < 2; ++i)
    out[i] = rcont[0][i] + s * (rcont[1][i] + s1 * (rcont[2][i] + s * (rcont[3][i] + s1 * rcont[4][i])));
  return out;
}

Dopri5::Dopri5(Field field, IntegratorConfig cfg) : field_(std::move(field)), cfg_(cfg) {
  if (!(cfg_.rel_tol > 0 && cfg_.abs_tol > 0 && cfg_.event_tol > 0 && cfg_.escape_radius > 0))
    throw Error(ErrorCode::InvalidArgument, "integrator tolerances must be positive");
}

double Dopri5::initial_step(double t_dir, const State& y, const State& f0) const {
  double dnf = 0.0, dny = 0.0;
  for (int i = 0; i < 2; ++i) {
    double sk = cfg_.abs_tol + cfg_.rel_tol * std::fabs(y[i]);
    dnf += (f0[i] / sk) * (f0[i] / sk);
    dny += (y[i] / sk) * (y[i] / sk);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
  State y1{y[0] + t_dir * h * f0[0], y[1] + t_dir * h * f0[1]};
  State f1 = field_(y1);
  double der2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    double sk = cfg_.abs_tol + cfg_.rel_tol * std::fabs(y[i]);
    der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
  }
  der2 = std::sqrt(der2) / h;
  double der12 = std::max(std::fabs(der2), std::sqrt(dnf));
  double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
  return std::min(100.0 * h, h1);
}

Dopri5::Outcome Dopri5::run(double t0, State y0, double t_end, const Observer& observer) const {
  Outcome out;
  out.t = t0;
  out.state = y0;
  if (!(radius(y0) <= cfg_.escape_radius)) {
    out.reason = Termination::Escape;
    return out;
  }
  if (t_end == t0) return out;
  const double dir = t_end > t0 ? 1.0 : -1.0;
  State y = y0;
  double t = t0;
  State k1 = field_(y);
  double h = initial_step(dir, y, k1) * dir;
  double fac_old = 1e-4;
  bool rejected_last = false;
  State k2, k3, k4, k5, k6, k7, ys, y_new;

  while (true) {
    if (out.steps >= cfg_.max_steps) {
      out.reason = Termination::MaxSteps;
      break;
    }
    if ((t + h - t_end) * dir > 0.0) h = t_end - t;
    if (std::fabs(h) <= 1e-15 * std::max(1.0, std::fabs(t)))
      throw Error(ErrorCode::StepUnderflow, "step size underflow at t = " + std::to_string(t));

    for (int i = 0; i < 2; ++i) ys[i] = y[i] + h * a21 * k1[i];
    k2 = field_(ys);
    for (int i = 0; i < 2; ++i) ys[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = field_(ys);
    for (int i = 0; i < 2; ++i) ys[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = field_(ys);
    for (int i = 0; i < 2; ++i)
      ys[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = field_(ys);
    for (int i = 0; i < 2; ++i)
      ys[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = field_(ys);
    for (int i = 0; i < 2; ++i)
      y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = field_(y_new);

    double err = 0.0;
    bool finite = std::isfinite(y_new[0]) && std::isfinite(y_new[1]);
    for (int i = 0; i < 2 && finite; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sk = cfg_.abs_tol + cfg_.rel_tol * std::max(std::fabs(y[i]), std::fabs(y_new[i]));
      err += (e / sk) * (e / sk);
    }
    err = finite ? std::sqrt(err / 2.0) : 1e10;
    if (!std::isfinite(err)) err = 1e10;

    // Lund stabilization as in Hairer's DOPRI5.
    const double beta = 0.04;
    double fac11 = std::pow(err, 0.2 - beta * 0.75);
    double fac = fac11 / std::pow(fac_old, beta) / 0.9;
    fac = std::clamp(fac, 0.1, 5.0);
    double h_new = h / fac;

    if (err <= 1.0) {
      fac_old = std::max(err, 1e-4);
      ++out.steps;
      DenseStep step;
      step.t0 = t;
      step.h = h;
      for (int i = 0; i < 2; ++i) {
        double ydiff = y_new[i] - y[i];
        double bspl = h * k1[i] - ydiff;
        step.rcont[0][i] = y[i];
        step.rcont[1][i] = ydiff;
        step.rcont[2][i] = bspl;
        step.rcont[3][i] = ydiff - h * k7[i] - bspl;
        step.rcont[4][i] =
            h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      t += h;
      y = y_new;
      k1 = k7;
      out.t = t;
      out.state = y;
      if (rejected_last) h_new = dir * std::min(std::fabs(h_new), std::fabs(h));
      rejected_last = false;
      bool keep_going = observer ? observer(step) : true;
      if (radius(y) > cfg_.escape_radius) {
        out.reason = Termination::Escape;
        break;
      }
      if (!keep_going) {
        out.reason = Termination::Stopped;
        break;
      }
      if ((t - t_end) * dir >= 0.0) {
        out.reason = Termination::EndTime;
        break;
      }
    } else {
      h_new = h / std::min(1.0 / 0.2, fac11 / 0.9);
      rejected_last = true;
    }
    h = h_new;
  }
  return out;
}

Field lienard_field(const LienardSystem& sys) {
  std::vector<double> g = sys.g().to_doubles();
  std::vector<double> f = sys.f().to_doubles();
  return [g = std::move(g), f = std::move(f)](const State& s) -> State {
    const double x = s[0];
    double gv = 0.0, fv = 0.0;
    for (auto it = g.rbegin(); it != g.rend(); ++it) gv = gv * x + *it;
    for (auto it = f.rbegin(); it != f.rend(); ++it) fv = fv * x + *it;
    return {s[1], -gv - fv * s[1]};
  };
}

std::vector<std::array<double, 3>> Trajectory::samples(std::size_t per_step) const {
  per_step = std::max<std::size_t>(per_step, 1);
  std::vector<std::array<double, 3>> out;
  out.reserve(steps.size() * per_step + 1);
  out.push_back({t_start, initial[0], initial[1]});
  for (const auto& st : steps) {
    for (std::size_t j = 1; j <= per_step; ++j) {
      double t = j == per_step ? st.t1() : st.t0 + st.h * static_cast<double>(j) / static_cast<double>(per_step);
      State s = j == per_step ? st.end() : st.at(t);
      out.push_back({t, s[0], s[1]});
    }
  }
  return out;
}

Trajectory integrate(const LienardSystem& sys, State state, double t0, double t1,
                     const IntegratorConfig& cfg) {
  if (!std::isfinite(state[0]) || !std::isfinite(state[1]))
    throw Error(ErrorCode::InvalidArgument, "initial state must be finite");
  Trajectory traj;
  traj.initial = state;
  traj.t_start = t0;
  Dopri5 solver(lienard_field(sys), cfg);
  auto outcome = solver.run(t0, state, t1, [&](const DenseStep& st) {
    traj.steps.push_back(st);
    return true;
  });
  traj.reason = outcome.reason;
  traj.t_end = outcome.t;
  traj.final_state = outcome.state;
  return traj;
}

std::optional<double> upward_crossing(const DenseStep& step, double event_tol) {
  const double x0 = step.start()[0];
  const double x1 = step.end()[0];
  if (!(x0 < 0.0 && x1 >= 0.0)) return std::nullopt;
  double lo = step.t0, hi = step.t1();
  if (lo > hi) std::swap(lo, hi);
  // x(lo_in_time_order) < 0 <= x(hi) when integrating forward.
  const bool forward = step.h > 0;
  double t_neg = forward ? lo : hi;
  double t_pos = forward ? hi : lo;
  while (std::fabs(t_pos - t_neg) > event_tol) {
    double mid = 0.5 * (t_neg + t_pos);
    if (mid == t_neg || mid == t_pos) break;
    if (step.at(mid)[0] < 0.0)
      t_neg = mid;
    else
      t_pos = mid;
  }
  return 0.5 * (t_neg + t_pos);
}

namespace {

constexpr double kMinCrossingOrdinate = 1e-8;

Error no_return(Termination reason, double y0) {
  switch (reason) {
    case Termination::Escape:
      return Error(ErrorCode::Escape, "orbit from y0 = " + std::to_string(y0) + " escaped before returning");
    case Termination::MaxSteps:
      return Error(ErrorCode::MaxSteps, "step budget exhausted before the orbit returned");
    default:
      return Error(ErrorCode::NoReturn, "orbit from y0 = " + std::to_string(y0) + " did not return within the time horizon");
  }
}

}  // namespace

CrossingRecord return_map(const LienardSystem& sys, double y0, const IntegratorConfig& cfg) {
  if (!(y0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "return map needs y0 > 0");
  Dopri5 solver(lienard_field(sys), cfg);
  std::optional<CrossingRecord> hit;
  auto outcome = solver.run(0.0, {0.0, y0}, cfg.max_time, [&](const DenseStep& st) {
    auto tc = upward_crossing(st, cfg.event_tol);
    if (!tc) return true;
    double y = st.at(*tc)[1];
    if (std::fabs(y) < kMinCrossingOrdinate) return true;
    hit = CrossingRecord{*tc, y, 1};
    return false;
  });
  if (!hit) throw no_return(outcome.reason, y0);
  return *hit;
}

std::optional<double> axis_crossing(const DenseStep& step, double event_tol) {
  const double x0 = step.start()[0];
  const double x1 = step.end()[0];
  if (x0 == 0.0 || (x0 < 0.0) == (x1 < 0.0)) return std::nullopt;
  const bool neg_first = x0 < 0.0;
  double t_a = step.t0, t_b = step.t1();
  while (std::fabs(t_b - t_a) > event_tol) {
    double mid = 0.5 * (t_a + t_b);
    if (mid == t_a || mid == t_b) break;
    if ((step.at(mid)[0] < 0.0) == neg_first)
      t_a = mid;
    else
      t_b = mid;
  }
  return 0.5 * (t_a + t_b);
}

CrossingRecord half_turn(const LienardSystem& sys, double y0, int time_sign, const IntegratorConfig& cfg) {
  if (!(y0 != 0.0) || !std::isfinite(y0)) throw Error(ErrorCode::InvalidArgument, "half turn needs y0 != 0");
  if (time_sign == 0) throw Error(ErrorCode::InvalidArgument, "time direction must be nonzero");
  Dopri5 solver(lienard_field(sys), cfg);
  std::optional<CrossingRecord> hit;
  const double t_end = time_sign > 0 ? cfg.max_time : -cfg.max_time;
  auto outcome = solver.run(0.0, {0.0, y0}, t_end, [&](const DenseStep& st) {
    auto tc = axis_crossing(st, cfg.event_tol);
    if (!tc) return true;
    double y = st.at(*tc)[1];
    if (std::fabs(y) < kMinCrossingOrdinate) return true;
    hit = CrossingRecord{*tc, y, 1};
    return false;
  });
  if (!hit) throw no_return(outcome.reason, y0);
  return *hit;
}

TwoSidedClosure two_sided_closure(const LienardSystem& sys, double y0, const IntegratorConfig& cfg) {
  TwoSidedClosure out;
  out.forward_y = half_turn(sys, y0, 1, cfg).y;
  out.backward_y = half_turn(sys, y0, -1, cfg).y;
  out.error = std::fabs(out.forward_y - out.backward_y);
  return out;
}

ClosureResult closure_test(const LienardSystem& sys, std::span<const double> y0s,
                           const IntegratorConfig& cfg) {
  ClosureResult res;
  for (double y0 : y0s) {
    CrossingRecord c = return_map(sys, y0, cfg);
    double err = std::fabs(c.y - y0);
    res.errors.push_back(err);
    res.max_error = std::max(res.max_error, err);
    if (!(err < 1e3 * cfg.event_tol * std::max(1.0, y0))) res.closed = false;
  }
  return res;
}

EscapeResult escape_probe(const LienardSystem& sys, double y0, std::size_t n_crossings,
                          const IntegratorConfig& cfg) {
  if (!(y0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "escape probe needs y0 > 0");
  EscapeResult res;
  Dopri5 solver(lienard_field(sys), cfg);
  double arc_max = y0;
  auto outcome = solver.run(0.0, {0.0, y0}, cfg.max_time, [&](const DenseStep& st) {
    if (n_crossings == 0) return false;
    arc_max = std::max({arc_max, radius(st.at(st.t0 + 0.5 * st.h)), radius(st.end())});
    auto tc = upward_crossing(st, cfg.event_tol);
    if (!tc) return true;
    double y = st.at(*tc)[1];
    if (std::fabs(y) < kMinCrossingOrdinate) return true;
    res.crossings.push_back({*tc, y, res.crossings.size() + 1});
    res.radii.push_back(arc_max);
    arc_max = y;
    return res.crossings.size() < n_crossings;
  });
  if (outcome.reason == Termination::Escape) {
    res.bounded = false;
    res.radii.push_back(std::max(arc_max, radius(outcome.state)));
  }
  res.completed = res.crossings.size() >= n_crossings;
  return res;
}

void write_csv(const Trajectory& traj, std::ostream& os, std::size_t per_step) {
  os << "t,x,y\n";
  char buf[96];
  for (const auto& p : traj.samples(per_step)) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p[0], p[1], p[2]);
    os << buf;
  }
}

}  // namespace lc::flow

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "liencenter/system.hpp"

namespace lc::flow {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 2'000'000;
  /// Time localization of section crossings.
  double event_tol = 1e-12;
  double escape_radius = 1e6;
  /// Horizon for searches that wait for an event (return map, probes).
  double max_time = 1e5;
};

using State = std::array<double, 2>;
using Field = std::function<State(const State&)>;

/// One accepted Dormand-Prince step with its continuous extension.
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<State, 5> rcont{};

  double t1() const { return t0 + h; }
  State start() const { return rcont[0]; }
  State end() const;
  /// Fourth-order interpolant, t in [t0, t0 + h].
  State at(double t) const;
};

enum class Termination { EndTime, Escape, MaxSteps, Stopped };

const char* to_string(Termination t);

/// Adaptive embedded Runge-Kutta 5(4) pair (Dormand-Prince) with dense
/// output. Local error per step is kept below abs_tol + rel_tol * |state|
/// componentwise (RMS norm).
class Dopri5 {
 public:
  using Observer = std::function<bool(const DenseStep&)>;

  Dopri5(Field field, IntegratorConfig cfg);

  struct Outcome {
    Termination reason = Termination::EndTime;
    double t = 0.0;
    State state{};
    std::size_t steps = 0;
  };

  /// Integrates from (t0, y0) toward t_end (either direction). The observer
  /// sees every accepted step and may return false to stop. Throws
  /// StepUnderflow when the step size collapses.
  Outcome run(double t0, State y0, double t_end, const Observer& observer) const;

 private:
  double initial_step(double t_dir, const State& y, const State& f0) const;
  Field field_;
  IntegratorConfig cfg_;
};

/// (y, -g(x) - f(x) y) with coefficients rounded to double.
Field lienard_field(const LienardSystem& sys);

struct Trajectory {
  State initial{};
  double t_start = 0.0;
  std::vector<DenseStep> steps;
  Termination reason = Termination::EndTime;
  double t_end = 0.0;
  State final_state{};

  /// Step endpoints plus `per_step - 1` interior interpolated points.
  std::vector<std::array<double, 3>> samples(std::size_t per_step = 1) const;
};

Trajectory integrate(const LienardSystem& sys, State state, double t0, double t1,
                     const IntegratorConfig& cfg = {});

/// Crossing of the section {x = 0, y > 0} in the direction x' > 0.
struct CrossingRecord {
  double t = 0.0;
  double y = 0.0;
  std::size_t index = 0;
};

/// Time in [step.t0, step.t1] where x crosses zero upward, bisected on the
/// dense output to `event_tol`; nullopt when the step has no such crossing.
std::optional<double> upward_crossing(const DenseStep& step, double event_tol);

/// First return to the positive y-axis from (0, y0). Throws Escape, MaxSteps
/// or NoReturn when the orbit does not come back.
CrossingRecord return_map(const LienardSystem& sys, double y0, const IntegratorConfig& cfg = {});

/// Time in the step where x changes sign, bisected to `event_tol`; nullopt
/// when the step starts on the axis or x keeps its sign.
std::optional<double> axis_crossing(const DenseStep& step, double event_tol);

/// First crossing of x = 0 by the orbit through (0, y0), integrating forward
/// (time_sign > 0) or backward (time_sign < 0). Throws Escape, MaxSteps or
/// NoReturn when the orbit never reaches the opposite half-axis.
CrossingRecord half_turn(const LienardSystem& sys, double y0, int time_sign, const IntegratorConfig& cfg = {});

struct TwoSidedClosure {
  double forward_y = 0.0;
  double backward_y = 0.0;
  /// |forward_y - backward_y|.
  double error = 0.0;
};

/// The orbit through (0, y0) is closed iff its forward and backward arcs meet
/// the opposite half-axis at the same point. Each arc only sees one side of
/// the y-axis, so errors are not carried through a contracting half and then
/// amplified in an expanding one.
TwoSidedClosure two_sided_closure(const LienardSystem& sys, double y0, const IntegratorConfig& cfg = {});

struct ClosureResult {
  bool closed = true;
  double max_error = 0.0;
  std::vector<double> errors;
};

/// closed iff every |y_ret - y0| < 1e3 * event_tol * max(1, y0).
ClosureResult closure_test(const LienardSystem& sys, std::span<const double> y0s,
                           const IntegratorConfig& cfg = {});

struct EscapeResult {
  bool bounded = true;
  /// Max radius over each arc between consecutive crossings.
  std::vector<double> radii;
  std::vector<CrossingRecord> crossings;
  /// False when the time or step budget ran out before n crossings.
  bool completed = true;
};

EscapeResult escape_probe(const LienardSystem& sys, double y0, std::size_t n_crossings,
                          const IntegratorConfig& cfg = {});

/// CSV with header `t,x,y`, 17 significant digits.
void write_csv(const Trajectory& traj, std::ostream& os, std::size_t per_step = 1);

}  // namespace lc::flow

#pragma once

#include <cstddef>
#include <optional>

#include "liencenter/system.hpp"

namespace lc::branches {

struct ToleranceOptions {
  /// Relative agreement required between F(x1) and F(x2).
  double tol_rel = 1e-9;
  /// Number of log-spaced levels sampled when no exact shortcut applies.
  std::size_t samples = 256;
  /// Levels span [C_max * 10^-decades, C_max].
  double decades = 12.0;
  /// Parity and functional shortcuts; disable to force the sampling route.
  bool use_shortcuts = true;
};

enum class Side { Neg, Pos };

/// Two-branch inverse of G around the origin.
///
/// G = int_0^x g is strictly decreasing on x < 0 and strictly increasing on
/// x > 0 once x g(x) > 0 for x != 0; construction verifies that condition
/// exactly and throws InvalidArgument otherwise.
class BranchContext {
 public:
  explicit BranchContext(const LienardSystem& sys);

  const LienardSystem& system() const { return sys_; }
  const Polynomial& G() const { return sys_.G(); }
  const Polynomial& F() const { return sys_.F(); }
  int r() const { return r_; }
  /// Sampling horizon X = 10 * cauchy_bound(g).
  double x_max() const { return x_max_; }
  double w_max() const { return w_max_; }
  /// max(G(-X), G(X)).
  double level_max() const { return level_max_; }
  /// Cauchy bound of g, the starting bracket for inversion.
  double bracket0() const { return bracket0_; }

 private:
  LienardSystem sys_;
  int r_;
  double bracket0_;
  double x_max_;
  double w_max_;
  double level_max_;
};

struct BranchPoint {
  double w = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double F1 = 0.0;
  double F2 = 0.0;
};

enum class IvStatus { HoldsExact, HoldsNumeric, Fails };

const char* to_string(IvStatus s);

struct IvResult {
  IvStatus status = IvStatus::HoldsNumeric;
  /// How the status was reached: "parity", "functional", "sampling".
  const char* method = "sampling";
  std::optional<BranchPoint> counterexample;
  std::size_t samples_used = 0;
};

/// ((r+1) G(x))^{1/(r+1)}.
double w_of_x(const BranchContext& ctx, double x);

/// The x on the requested side with G(x) = level, to |G(x) - level| <=
/// 1e-14 (1 + level). Throws NonConvergence on pathological scaling.
double invert_branch(const BranchContext& ctx, double level, Side side);

/// Branch point at G-level c (w = ((r+1)c)^{1/(r+1)}).
BranchPoint branch_point(const BranchContext& ctx, double level);

/// Certified sign of F(x1) - F(x2) where x2 is the given positive abscissa
/// and x1 < 0 is the exact partner with G(x1) = G(x2). nullopt when the
/// enclosures cannot separate the two values.
std::optional<int> certified_difference_sign(const BranchContext& ctx, double x2);

IvResult check_condition_iv(const BranchContext& ctx, const ToleranceOptions& opts = {});

/// True when F = P(G) for a polynomial P (exact).
bool is_function_of(const Polynomial& F, const Polynomial& G);

enum class Direction { F1LessF2, F1GreaterF2, Identical };

struct WHat {
  double w_hat = 0.0;
  Direction direction = Direction::Identical;
};

const char* to_string(Direction d);

WHat find_w_hat(const BranchContext& ctx, const ToleranceOptions& opts = {});

enum class Boundedness { PositivelyBounded, NegativelyBounded, AllBounded };

const char* to_string(Boundedness b);

/// Requires conditions (i) and (iii); throws InvalidArgument otherwise.
Boundedness boundedness_direction(const BranchContext& ctx, const ToleranceOptions& opts = {});

}  // namespace lc::branches

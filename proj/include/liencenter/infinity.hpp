#pragma once

#include <array>
#include <string>
#include <vector>

#include "liencenter/system.hpp"

namespace lc::infinity {

enum class Regime { BelowNPlus1, EqualNPlus1, Between, Equal2NPlus1, Above2NPlus1 };

const char* to_string(Regime r);

/// Degree data after rescaling to x' = y, y' = -(eps x^m + ...) - y (x^n + ...).
struct NormalizedIndices {
  int m = 0;
  int n = 0;
  Rational epsilon;
  Regime regime = Regime::BelowNPlus1;
  bool b_n_flipped = false;  ///< b_n < 0 was normalized by (x, y, t) -> (x, -y, -t)
  int m_parity() const { return m % 2; }
  int n_parity() const { return n % 2; }
};

NormalizedIndices normalize(const LienardSystem& sys);
NormalizedIndices make_indices(int m, int n, const Rational& epsilon);

struct InfinityEquilibrium {
  std::string name;     ///< e.g. "I_B+"
  std::string type;     ///< e.g. "saddle", "unstable degenerate node"
  std::string sectors;  ///< sector structure of a small neighbourhood, may be empty
};

/// One row of the classification of equilibria at infinity.
struct InfinityClass {
  int row = 0;  ///< 1-based row number in table order
  std::string condition;
  std::vector<InfinityEquilibrium> equilibria;
  std::string figure_ref;
  bool connection_at_infinity = true;
};

/// Exact table lookup; throws Domain when epsilon == 0.
InfinityClass classify_infinity(const NormalizedIndices& idx);

/// Number of rows in the encoded table.
std::size_t table_size();

enum class Chart { U, V };

/// Compactified vector field in a Poincare chart.
///
/// Chart U: x = 1/z, y = u/z, time dtau = -dt / z^{d-1}.
/// Chart V: x = v/z, y = 1/z, time dtau = dt / z^{d-1}.
/// d = max(m, n + 1) is the degree of the vector field (y, -g - f y).
class ChartField {
 public:
  ChartField(const LienardSystem& sys, Chart chart);

  Chart chart() const { return chart_; }
  int degree() const { return d_; }

  /// Field at chart point (p, z), p = u or v.
  std::array<double, 2> operator()(double p, double z) const;

 private:
  Chart chart_;
  int d_;
  std::vector<double> a_;  // g coefficients
  std::vector<double> b_;  // f coefficients
};

ChartField chart_field(const LienardSystem& sys, Chart chart);

}  // namespace lc::infinity

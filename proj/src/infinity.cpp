#include "liencenter/infinity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lc::infinity {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::BelowNPlus1: return "m<n+1";
    case Regime::EqualNPlus1: return "m=n+1";
    case Regime::Between: return "n+1<m<2n+1";
    case Regime::Equal2NPlus1: return "m=2n+1";
    case Regime::Above2NPlus1: return "m>2n+1";
  }
  return "?";
}

namespace {

Regime regime_of(int m, int n) {
  if (m < n + 1) return Regime::BelowNPlus1;
  if (m == n + 1) return Regime::EqualNPlus1;
  if (m < 2 * n + 1) return Regime::Between;
  if (m == 2 * n + 1) return Regime::Equal2NPlus1;
  return Regime::Above2NPlus1;
}

}  // namespace

NormalizedIndices make_indices(int m, int n, const Rational& epsilon) {
  if (m < 0 || n < 0) throw Error(ErrorCode::InvalidArgument, "degrees must be non-negative");
  NormalizedIndices idx;
  idx.m = m;
  idx.n = n;
  idx.epsilon = epsilon;
  idx.regime = regime_of(m, n);
  return idx;
}

NormalizedIndices normalize(const LienardSystem& sys) {
  const int m = sys.m();
  const int n = sys.n();
  Rational b_n = sys.b_n();
  const bool flipped = b_n < 0;
  if (flipped) b_n = -b_n;
  Rational eps;
  if (m == 2 * n + 1)
    eps = sys.a_m() / (b_n * b_n);
  else if (m % 2 == 0)
    eps = 1;  // even m: a reflection absorbs the sign of a_m
  else
    eps = sys.a_m() > 0 ? 1 : -1;
  NormalizedIndices idx = make_indices(m, n, eps);
  idx.b_n_flipped = flipped;
  return idx;
}

// --- table ------------------------------------------------------------------

namespace {

struct Row {
  std::function<bool(const NormalizedIndices&, int eps_vs_threshold)> matches;
  std::string condition;
  std::vector<InfinityEquilibrium> equilibria;
  std::string figure;
  bool connection;
};

const std::string kHyp1 = "one hyperbolic sector";
const std::string kEll1 = "one elliptic sector";

bool m_even(const NormalizedIndices& i) { return i.m % 2 == 0; }
bool n_even(const NormalizedIndices& i) { return i.n % 2 == 0; }
bool eps_pos(const NormalizedIndices& i) { return i.epsilon > 0; }

const std::vector<Row>& table() {
  using R = Regime;
  using E = InfinityEquilibrium;
  static const std::vector<Row> rows = [] {
    std::vector<Row> t;
    auto in = [](R want) { return [want](const NormalizedIndices& i) { return i.regime == want; }; };
    // m < n + 1
    auto below = in(R::BelowNPlus1);
    t.push_back({[=](auto& i, int) { return below(i) && m_even(i) && n_even(i); },
                 "m<n+1; m, n even",
                 {E{"I_A+", "saddle", ""}, E{"I_A-", "stable node", ""},
                  E{"I_B+", "unstable degenerate node", ""}, E{"I_B-", "unstable degenerate node", ""}},
                 "Figure 4(a)", true});
    t.push_back({[=](auto& i, int) { return below(i) && !m_even(i) && n_even(i) && eps_pos(i); },
                 "m<n+1; m odd, n even; epsilon=1",
                 {E{"I_A+", "saddle", ""}, E{"I_A-", "saddle", ""},
                  E{"I_B+", "unstable degenerate node", ""}, E{"I_B-", "unstable degenerate node", ""}},
                 "Figure 4(b)", true});
    t.push_back({[=](auto& i, int) { return below(i) && !m_even(i) && n_even(i) && !eps_pos(i); },
                 "m<n+1; m odd, n even; epsilon=-1",
                 {E{"I_A+", "stable node", ""}, E{"I_A-", "stable node", ""},
                  E{"I_B+", "unstable degenerate node", ""}, E{"I_B-", "unstable degenerate node", ""}},
                 "Figure 4(c)", true});
    t.push_back({[=](auto& i, int) { return below(i) && m_even(i) && !n_even(i); },
                 "m<n+1; m even, n odd",
                 {E{"I_A+", "saddle", ""}, E{"I_A-", "unstable node", ""},
                  E{"I_B+", "degenerate", kHyp1}, E{"I_B-", "degenerate", kEll1}},
                 "Figure 4(d)", true});
    t.push_back({[=](auto& i, int) { return below(i) && !m_even(i) && !n_even(i) && eps_pos(i); },
                 "m<n+1; m, n odd; epsilon=1",
                 {E{"I_A+", "saddle", ""}, E{"I_A-", "saddle", ""},
                  E{"I_B+", "degenerate", kHyp1}, E{"I_B-", "degenerate", kEll1}},
                 "Figure 4(e)", true});
    t.push_back({[=](auto& i, int) { return below(i) && !m_even(i) && !n_even(i) && !eps_pos(i); },
                 "m<n+1; m, n odd; epsilon=-1",
                 {E{"I_A+", "stable node", ""}, E{"I_A-", "unstable node", ""},
                  E{"I_B+", "degenerate", kHyp1}, E{"I_B-", "degenerate", kEll1}},
                 "Figure 4(f)", true});
    // m = n + 1
    auto eq1 = in(R::EqualNPlus1);
    t.push_back({[=](auto& i, int) { return eq1(i) && n_even(i) && eps_pos(i); },
                 "m=n+1; n even; epsilon=1",
                 {E{"I_B+", "unstable degenerate node", ""}, E{"I_B-", "unstable degenerate node", ""},
                  E{"I_D+", "saddle", ""}, E{"I_D-", "saddle", ""}},
                 "Figure 5(a)", true});
    t.push_back({[=](auto& i, int) { return eq1(i) && n_even(i) && !eps_pos(i); },
                 "m=n+1; n even; epsilon=-1",
                 {E{"I_B+", "unstable degenerate node", ""}, E{"I_B-", "unstable degenerate node", ""},
                  E{"I_C+", "stable node", ""}, E{"I_C-", "stable node", ""}},
                 "Figure 5(b)", true});
    t.push_back({[=](auto& i, int) { return eq1(i) && !n_even(i); },
                 "m=n+1; n odd",
                 {E{"I_B+", "degenerate", kHyp1}, E{"I_B-", "degenerate", kEll1},
                  E{"I_D+", "saddle", ""}, E{"I_D-", "unstable node", ""}},
                 "Figure 5(c)", true});
    // n + 1 < m < 2n + 1
    auto mid = in(R::Between);
    t.push_back({[=](auto& i, int) { return mid(i) && m_even(i) && n_even(i); },
                 "n+1<m<2n+1; m, n even",
                 {E{"I_B+", "unstable degenerate node", ""},
                  E{"I_B-", "degenerate", "one elliptic sector and one hyperbolic sector"}},
                 "Figure 6(a)", true});
    t.push_back({[=](auto& i, int) { return mid(i) && !m_even(i) && n_even(i) && eps_pos(i); },
                 "n+1<m<2n+1; m odd, n even; epsilon=1",
                 {E{"I_B+", "saddle-node", ""}, E{"I_B-", "saddle-node", ""}},
                 "Figure 6(b)", true});
    t.push_back({[=](auto& i, int) { return mid(i) && !m_even(i) && n_even(i) && !eps_pos(i); },
                 "n+1<m<2n+1; m odd, n even; epsilon=-1",
                 {E{"I_B+", "degenerate", kEll1}, E{"I_B-", "degenerate", kEll1}},
                 "Figure 6(c)", true});
    t.push_back({[=](auto& i, int) { return mid(i) && m_even(i) && !n_even(i); },
                 "n+1<m<2n+1; m even, n odd",
                 {E{"I_B+", "unstable degenerate node", ""},
                  E{"I_B-", "degenerate", "one elliptic sector and one hyperbolic sector"}},
                 "Figure 6(d)", true});
    t.push_back({[=](auto& i, int) { return mid(i) && !m_even(i) && !n_even(i) && eps_pos(i); },
                 "n+1<m<2n+1; m, n odd; epsilon=1",
                 {E{"I_B+", "degenerate", kHyp1},
                  E{"I_B-", "degenerate", "one elliptic sector and two hyperbolic sectors"}},
                 "Figure 6(e)", true});
    t.push_back({[=](auto& i, int) { return mid(i) && !m_even(i) && !n_even(i) && !eps_pos(i); },
                 "n+1<m<2n+1; m, n odd; epsilon=-1",
                 {E{"I_B+", "degenerate", kEll1}, E{"I_B-", "degenerate", kEll1}},
                 "Figure 6(f)", true});
    // m = 2n + 1; the int argument is sign(epsilon - 1/(4n+4))
    auto eq2 = in(R::Equal2NPlus1);
    t.push_back({[=](auto& i, int) { return eq2(i) && !eps_pos(i); },
                 "m=2n+1; epsilon<0",
                 {E{"I_B+", "degenerate", kEll1}, E{"I_B-", "degenerate", kEll1}},
                 "Figure 7(a)", true});
    t.push_back({[=](auto& i, int c) { return eq2(i) && n_even(i) && eps_pos(i) && c < 0; },
                 "m=2n+1; n even; 0<epsilon<1/(4n+4)",
                 {E{"I_B+", "saddle-node", ""}, E{"I_B-", "saddle-node", ""}},
                 "Figure 7(b)", true});
    t.push_back({[=](auto& i, int c) { return eq2(i) && n_even(i) && c == 0; },
                 "m=2n+1; n even; epsilon=1/(4n+4)",
                 {E{"I_B+", "saddle-node", ""}, E{"I_B-", "saddle-node", ""}},
                 "Figure 7(c)", true});
    t.push_back({[=](auto& i, int c) { return eq2(i) && !n_even(i) && eps_pos(i) && c < 0; },
                 "m=2n+1; n odd; 0<epsilon<1/(4n+4)",
                 {E{"I_B+", "degenerate", kHyp1},
                  E{"I_B-", "degenerate", "one elliptic sector and two hyperbolic sectors"}},
                 "Figure 7(d)", true});
    t.push_back({[=](auto& i, int c) { return eq2(i) && !n_even(i) && c == 0; },
                 "m=2n+1; n odd; epsilon=1/(4n+4)",
                 {E{"I_B+", "degenerate", kHyp1},
                  E{"I_B-", "degenerate", "one elliptic sector and two hyperbolic sectors"}},
                 "Figure 7(e)", true});
    t.push_back({[=](auto& i, int c) { return eq2(i) && c > 0; },
                 "m=2n+1; epsilon>1/(4n+4)",
                 {E{"I_B+", "degenerate", kHyp1}, E{"I_B-", "degenerate", kHyp1}},
                 "Figure 7(f)", false});
    // m > 2n + 1
    auto above = in(R::Above2NPlus1);
    t.push_back({[=](auto& i, int) { return above(i) && m_even(i); },
                 "m>2n+1; m even",
                 {E{"I_B+", "stable degenerate node", ""}, E{"I_B-", "unstable degenerate node", ""}},
                 "Figure 8(a)", true});
    t.push_back({[=](auto& i, int) { return above(i) && !m_even(i) && eps_pos(i); },
                 "m>2n+1; m odd; epsilon=1",
                 {E{"I_B+", "degenerate", kHyp1}, E{"I_B-", "degenerate", kHyp1}},
                 "Figure 8(b)", false});
    t.push_back({[=](auto& i, int) { return above(i) && !m_even(i) && !eps_pos(i); },
                 "m>2n+1; m odd; epsilon=-1",
                 {E{"I_B+", "degenerate", kEll1}, E{"I_B-", "degenerate", kEll1}},
                 "Figure 8(c)", true});
    return t;
  }();
  return rows;
}

}  // namespace

std::size_t table_size() { return table().size(); }

InfinityClass classify_infinity(const NormalizedIndices& idx) {
  if (idx.epsilon == 0) throw Error(ErrorCode::Domain, "epsilon = 0 has no classification");
  const bool odd_m = idx.m % 2 == 1;
  if (idx.regime != Regime::Equal2NPlus1 && odd_m && abs(idx.epsilon) != 1)
    throw Error(ErrorCode::InvalidArgument, "epsilon must be +1 or -1 unless m = 2n+1");
  int vs_threshold = 0;
  if (idx.regime == Regime::Equal2NPlus1) {
    Rational threshold(1, 4 * idx.n + 4);
    vs_threshold = idx.epsilon < threshold ? -1 : (idx.epsilon > threshold ? 1 : 0);
  }
  const auto& rows = table();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Row& row = rows[k];
    if (!row.matches(idx, vs_threshold)) continue;
    InfinityClass out;
    out.row = static_cast<int>(k) + 1;
    out.condition = row.condition;
    out.equilibria = row.equilibria;
    out.figure_ref = row.figure;
    out.connection_at_infinity = row.connection;
    return out;
  }
  throw Error(ErrorCode::Domain, "no table row matches the normalized indices");
}

// --- charts -----------------------------------------------------------------

ChartField::ChartField(const LienardSystem& sys, Chart chart)
    : chart_(chart),
      d_(std::max(sys.m(), sys.n() + 1)),
      a_(sys.g().to_doubles()),
      b_(sys.f().to_doubles()) {}

std::array<double, 2> ChartField::operator()(double p, double z) const {
  // Powers z^k for k = 0..d+1 and p^k for k = 0..d+1.
  std::vector<double> zp(static_cast<std::size_t>(d_) + 2, 1.0);
  std::vector<double> pp(static_cast<std::size_t>(d_) + 2, 1.0);
  for (std::size_t k = 1; k < zp.size(); ++k) {
    zp[k] = zp[k - 1] * z;
    pp[k] = pp[k - 1] * p;
  }
  const auto d = static_cast<std::size_t>(d_);
  if (chart_ == Chart::U) {
    // du/dtau = z^d g(1/z) + u z^{d-1} f(1/z) + u^2 z^{d-1};  dz/dtau = u z^d
    double zg = 0.0, zf = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) zg += a_[i] * zp[d - i];
    for (std::size_t i = 0; i < b_.size(); ++i) zf += b_[i] * zp[d - 1 - i];
    return {zg + p * zf + p * p * zp[d - 1], p * zp[d]};
  }
  // dv/dtau = z^{d-1} + v z^d g(v/z) + v z^{d-1} f(v/z)
  // dz/dtau = z^{d+1} g(v/z) + z^d f(v/z)
  double g_d = 0.0, f_dm1 = 0.0, g_dp1 = 0.0, f_d = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    g_d += a_[i] * pp[i] * zp[d - i];
    g_dp1 += a_[i] * pp[i] * zp[d + 1 - i];
  }
  for (std::size_t i = 0; i < b_.size(); ++i) {
    f_dm1 += b_[i] * pp[i] * zp[d - 1 - i];
    f_d += b_[i] * pp[i] * zp[d - i];
  }
  return {zp[d - 1] + p * g_d + p * f_dm1, g_dp1 + f_d};
}

ChartField chart_field(const LienardSystem& sys, Chart chart) { return ChartField(sys, chart); }

}  // namespace lc::infinity

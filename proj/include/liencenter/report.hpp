#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liencenter/branches.hpp"
#include "liencenter/criteria.hpp"
#include "liencenter/flow.hpp"

namespace lc::report {

inline constexpr int kSchemaVersion = 1;

struct VerifyOptions {
  std::vector<double> seeds{0.5, 5.0, 50.0};
  double escape_y0 = 100.0;
  std::size_t escape_crossings = 20;
  flow::IntegratorConfig cfg{};
};

/// One closure probe at amplitude y0. The upper probe is the return map from
/// (0, y0). The lower probe follows the orbit through (0, -y0) forward and
/// backward to the positive y-axis; y_ret is the forward landing point and
/// the error is the gap between the two landings.
struct Probe {
  double y0 = 0.0;
  bool lower = false;
  /// "closed", "open", or the reason the orbit never returned.
  std::string outcome;
  std::optional<double> y_ret;
  std::optional<double> error;
};

struct Oracle {
  bool closed = true;
  double max_error = 0.0;
  std::vector<Probe> probes;
  std::optional<flow::EscapeResult> forward;
  std::optional<flow::EscapeResult> backward;
  /// Direction suggested by the escape probes, when they ran.
  std::optional<std::string> observed_boundedness;
};

Oracle run_oracle(const LienardSystem& sys, const criteria::Verdict& verdict,
                  const VerifyOptions& opts = {});

nlohmann::json infinity_json(const LienardSystem& sys);

/// Boundedness direction when (i) and (iii) hold, else nullopt.
std::optional<branches::Boundedness> boundedness_of(const LienardSystem& sys,
                                                    const branches::ToleranceOptions& opts);

nlohmann::json check_report(const LienardSystem& sys, const branches::ToleranceOptions& opts);

/// check_report plus the oracle block and `oracle_conflict`.
nlohmann::json verify_report(const LienardSystem& sys, const branches::ToleranceOptions& opts,
                             const VerifyOptions& vopts);

nlohmann::json family_quintic_report(const LienardSystem& sys);

nlohmann::json family_odd_report(int k, int l, const Rational& a, const Rational& b,
                                 const branches::ToleranceOptions& opts);

/// 0 global center, 1 not a global center, 2 numerically inconclusive.
int exit_code(criteria::VerdictKind kind);

}  // namespace lc::report

#include "liencenter/report.hpp"

#include <chrono>
#include <cmath>

#include "liencenter/infinity.hpp"
#include "liencenter/parallel.hpp"

namespace lc::report {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const char* outcome_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Escape: return "escape";
    case ErrorCode::MaxSteps: return "max-steps";
    case ErrorCode::StepUnderflow: return "step-underflow";
    default: return "no-return";
  }
}

json probe_json(const Probe& p) {
  json j = {{"y0", p.y0}, {"orbit", p.lower ? "lower" : "upper"}, {"outcome", p.outcome}};
  j["y_ret"] = p.y_ret ? json(*p.y_ret) : json(nullptr);
  j["error"] = p.error ? json(*p.error) : json(nullptr);
  return j;
}

json escape_json(const flow::EscapeResult& e) {
  json crossings = json::array();
  for (const auto& c : e.crossings) crossings.push_back({{"index", c.index}, {"t", c.t}, {"y", c.y}});
  return {{"bounded", e.bounded}, {"completed", e.completed}, {"radii", e.radii}, {"crossings", crossings}};
}

bool is_global_center(criteria::VerdictKind k) {
  return k == criteria::VerdictKind::GlobalCenterLinear || k == criteria::VerdictKind::GlobalCenterNilpotent;
}

}  // namespace

int exit_code(criteria::VerdictKind kind) {
  switch (kind) {
    case criteria::VerdictKind::GlobalCenterLinear:
    case criteria::VerdictKind::GlobalCenterNilpotent: return 0;
    case criteria::VerdictKind::NotGlobalCenter: return 1;
    case criteria::VerdictKind::NumericInconclusive: return 2;
  }
  return 2;
}

Oracle run_oracle(const LienardSystem& sys, const criteria::Verdict& verdict, const VerifyOptions& opts) {
  for (double y0 : opts.seeds)
    if (!(y0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "probe amplitudes must be positive");
  Oracle out;
  const LienardSystem reversed = sys.time_reversed();
  out.probes.resize(opts.seeds.size() * 2);
  parallel_for(out.probes.size(), [&](std::size_t k) {
    Probe& p = out.probes[k];
    p.y0 = opts.seeds[k / 2];
    p.lower = k % 2 == 1;
    try {
      if (p.lower) {
        auto c = flow::two_sided_closure(sys, -p.y0, opts.cfg);
        p.y_ret = c.forward_y;
        p.error = c.error;
      } else {
        auto c = flow::return_map(sys, p.y0, opts.cfg);
        p.y_ret = c.y;
        p.error = std::fabs(c.y - p.y0);
      }
      const double scale = std::max(1.0, p.lower ? std::fabs(*p.y_ret) : p.y0);
      p.outcome = *p.error < 1e3 * opts.cfg.event_tol * scale ? "closed" : "open";
    } catch (const Error& e) {
      p.outcome = outcome_of(e.code());
    }
  });
  for (const auto& p : out.probes) {
    if (p.outcome != "closed") out.closed = false;
    if (p.error) out.max_error = std::max(out.max_error, *p.error);
  }

  const auto& rep = verdict.report;
  const bool exact_ok = rep.i.status == criteria::Status::Pass && rep.iii.status == criteria::Status::Pass;
  if (!is_global_center(verdict.kind) && exact_ok) {
    out.forward = flow::escape_probe(sys, opts.escape_y0, opts.escape_crossings, opts.cfg);
    out.backward = flow::escape_probe(reversed, opts.escape_y0, opts.escape_crossings, opts.cfg);
    const bool fwd = out.forward->bounded, bwd = out.backward->bounded;
    if (fwd && !bwd)
      out.observed_boundedness = branches::to_string(branches::Boundedness::PositivelyBounded);
    else if (!fwd && bwd)
      out.observed_boundedness = branches::to_string(branches::Boundedness::NegativelyBounded);
    else if (fwd && bwd)
      out.observed_boundedness = branches::to_string(branches::Boundedness::AllBounded);
    else
      out.observed_boundedness = "Unbounded";
  }
  return out;
}

json infinity_json(const LienardSystem& sys) {
  try {
    auto idx = infinity::normalize(sys);
    auto cls = infinity::classify_infinity(idx);
    json eqs = json::array();
    for (const auto& e : cls.equilibria) eqs.push_back({{"name", e.name}, {"type", e.type}, {"sectors", e.sectors}});
    return {{"m", idx.m},
            {"n", idx.n},
            {"epsilon", to_string(idx.epsilon)},
            {"regime", infinity::to_string(idx.regime)},
            {"b_n_flipped", idx.b_n_flipped},
            {"row", cls.row},
            {"condition", cls.condition},
            {"figure", cls.figure_ref},
            {"connection_at_infinity", cls.connection_at_infinity},
            {"equilibria", eqs}};
  } catch (const Error& e) {
    return {{"error", e.what()}, {"code", to_string(e.code())}};
  }
}

std::optional<branches::Boundedness> boundedness_of(const LienardSystem& sys,
                                                    const branches::ToleranceOptions& opts) {
  if (!criteria::check_condition_i(sys).verdict || !criteria::check_condition_iii(sys).pass) return std::nullopt;
  branches::BranchContext ctx(sys);
  return branches::boundedness_direction(ctx, opts);
}

namespace {

json assemble(const LienardSystem& sys, const criteria::Verdict& verdict, double decide_ms,
              const branches::ToleranceOptions& opts) {
  json j;
  j["schema"] = kSchemaVersion;
  j["system"] = {{"f", sys.f().to_string()}, {"g", sys.g().to_string()}};
  j["verdict"] = criteria::to_json(verdict);
  j["infinity"] = infinity_json(sys);

  auto t1 = Clock::now();
  try {
    auto b = boundedness_of(sys, opts);
    j["boundedness"] = b ? json(branches::to_string(*b)) : json(nullptr);
  } catch (const Error& e) {
    j["boundedness"] = nullptr;
    j["boundedness_error"] = e.what();
  }
  j["timings_ms"] = {{"decide", decide_ms}, {"boundedness", ms_since(t1)}};
  return j;
}

}  // namespace

json check_report(const LienardSystem& sys, const branches::ToleranceOptions& opts) {
  auto t0 = Clock::now();
  criteria::Verdict verdict = criteria::decide_global_center(sys, opts);
  return assemble(sys, verdict, ms_since(t0), opts);
}

json verify_report(const LienardSystem& sys, const branches::ToleranceOptions& opts, const VerifyOptions& vopts) {
  auto t_decide = Clock::now();
  criteria::Verdict verdict = criteria::decide_global_center(sys, opts);
  json j = assemble(sys, verdict, ms_since(t_decide), opts);
  auto t0 = Clock::now();
  Oracle oracle = run_oracle(sys, verdict, vopts);
  j["timings_ms"]["oracle"] = ms_since(t0);

  json probes = json::array();
  for (const auto& p : oracle.probes) probes.push_back(probe_json(p));
  json o = {{"closed", oracle.closed}, {"max_error", oracle.max_error}, {"probes", probes}};
  o["escape_forward"] = oracle.forward ? escape_json(*oracle.forward) : json(nullptr);
  o["escape_backward"] = oracle.backward ? escape_json(*oracle.backward) : json(nullptr);
  o["observed_boundedness"] = oracle.observed_boundedness ? json(*oracle.observed_boundedness) : json(nullptr);
  j["oracle"] = o;

  std::vector<std::string> conflicts;
  if (is_global_center(verdict.kind) && !oracle.closed) conflicts.push_back("verdict is a global center but a probe did not close");
  if (verdict.reason == "iv" && oracle.closed) conflicts.push_back("condition (iv) fails but every probe closed");
  if (oracle.observed_boundedness && j["boundedness"].is_string() &&
      *oracle.observed_boundedness != j["boundedness"].get<std::string>())
    conflicts.push_back("escape probes suggest " + *oracle.observed_boundedness + ", branches predict " +
                        j["boundedness"].get<std::string>());
  j["oracle_conflict"] = !conflicts.empty();
  j["conflicts"] = conflicts;
  return j;
}

json family_quintic_report(const LienardSystem& sys) {
  json j;
  j["schema"] = kSchemaVersion;
  j["system"] = {{"f", sys.f().to_string()}, {"g", sys.g().to_string()}};
  auto form = criteria::quintic_normal_form(sys);
  if (!form) {
    j["family"] = nullptr;
    j["member"] = false;
    return j;
  }
  const Polynomial& g = sys.g();
  const Rational b1 = sys.f().coeff(1);
  if (form->nilpotent) {
    // 0 < |c| < 2 sqrt 2, i.e. b1^2 < 8 a3 after clearing the root.
    const Rational a3 = g.coeff(3);
    j["family"] = "nilpotent";
    j["params"] = {{"c", form->nil.c}};
    j["member"] = b1 != 0 && b1 * b1 < 8 * a3;
  } else {
    // a > -2 and b != 0; a > -2 iff a3 >= 0 or a3^2 < 4 a1 a5.
    const Rational a1 = g.coeff(1), a3 = g.coeff(3), a5 = g.coeff(5);
    j["family"] = "linear";
    j["params"] = {{"a", form->linear.a}, {"b", form->linear.b}};
    j["member"] = b1 != 0 && (a3 >= 0 || a3 * a3 < 4 * a1 * a5);
  }
  return j;
}

json family_odd_report(int k, int l, const Rational& a, const Rational& b, const branches::ToleranceOptions& opts) {
  json j;
  j["schema"] = kSchemaVersion;
  j["params"] = {{"k", k}, {"l", l}, {"a", to_string(a)}, {"b", to_string(b)}};
  auto space = criteria::family_membership(k, l, a, b);
  j["space"] = space ? json(criteria::to_string(*space)) : json(nullptr);
  try {
    LienardSystem sys = odd_family_system(k, l, a, b);
    j["system"] = {{"f", sys.f().to_string()}, {"g", sys.g().to_string()}};
    auto verdict = criteria::decide_global_center(sys, opts);
    j["verdict"] = criteria::to_json(verdict);
    const bool gc = is_global_center(verdict.kind);
    j["agrees"] = gc == space.has_value();
  } catch (const Error& e) {
    j["system"] = nullptr;
    j["verdict"] = nullptr;
    j["error"] = e.what();
    j["agrees"] = !space.has_value();
  }
  return j;
}

}  // namespace lc::report

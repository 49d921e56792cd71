#include "liencenter/criteria.hpp"

#include <cmath>

#include "liencenter/infinity.hpp"

namespace lc::criteria {

using nlohmann::json;
using lc::to_string;

const char* to_string(LocalKind k) {
  switch (k) {
    case LocalKind::LinearCandidate: return "LinearCandidate";
    case LocalKind::NilpotentCandidate: return "NilpotentCandidate";
    case LocalKind::NotCandidate: return "NotCandidate";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::NumericPass: return "numeric-pass";
  }
  return "?";
}

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::GlobalCenterLinear: return "GlobalCenterLinear";
    case VerdictKind::GlobalCenterNilpotent: return "GlobalCenterNilpotent";
    case VerdictKind::NotGlobalCenter: return "NotGlobalCenter";
    case VerdictKind::NumericInconclusive: return "NumericInconclusive";
  }
  return "?";
}

const char* to_string(Space s) {
  switch (s) {
    case Space::S1: return "S1";
    case Space::S2: return "S2";
    case Space::S3: return "S3";
    case Space::S4: return "S4";
  }
  return "?";
}

SignWitness check_condition_i(const LienardSystem& sys) {
  return is_positive_punctured(Polynomial::x() * sys.g());
}

LocalType classify_local(const LienardSystem& sys) {
  const int r = sys.r();
  const int s = sys.s();
  const Rational a_r = sys.a_r();
  LocalType out;
  if (r == 2 * s + 1 && r >= 3) out.nilpotent_threshold = sys.b_s() * sys.b_s() - 2 * (r + 1) * a_r;

  if (r == 1) {
    if (s >= 1 && a_r > 0) {
      out.kind = LocalKind::LinearCandidate;
      out.clause = "r=1, s>=1, a_r>0";
    } else if (s < 1) {
      out.clause = "r=1 but s=0 (f(0) != 0)";
    } else {
      out.clause = "r=1 but a_r<=0";
    }
    return out;
  }
  if (r % 2 == 1 && r > 2 && r < 2 * s + 1) {
    if (a_r > 0) {
      out.kind = LocalKind::NilpotentCandidate;
      out.clause = "r odd, 2<r<2s+1, a_r>0";
    } else {
      out.clause = "r odd, 2<r<2s+1 but a_r<=0";
    }
    return out;
  }
  if (out.nilpotent_threshold) {
    if (*out.nilpotent_threshold < 0) {
      out.kind = LocalKind::NilpotentCandidate;
      out.clause = "r=2s+1>=3, b_s^2-2(r+1)a_r<0";
    } else {
      out.clause = "r=2s+1>=3 but b_s^2-2(r+1)a_r>=0";
    }
    return out;
  }
  if (r == 0)
    out.clause = "r=0 (g(0) != 0)";
  else if (r % 2 == 0)
    out.clause = "r even";
  else
    out.clause = "r odd but r>2s+1";
  return out;
}

ConditionIII check_condition_iii(const LienardSystem& sys) {
  const int m = sys.m();
  const int n = sys.n();
  const Rational a_m = sys.a_m();
  const Rational b_n = sys.b_n();
  ConditionIII out;
  out.epsilon = infinity::normalize(sys).epsilon;
  if (m == 2 * n + 1) {
    Rational t = 4 * (n + 1) * a_m / (b_n * b_n);
    out.threshold = t;
    out.pass = t > 1;
    out.clause = out.pass ? "m=2n+1, 4(n+1)a_m/b_n^2>1" : "m=2n+1 but 4(n+1)a_m/b_n^2<=1";
    return out;
  }
  if (m > 2 * n + 1) {
    out.pass = m % 2 == 1 && a_m > 0;
    if (out.pass)
      out.clause = "m odd, m>2n+1, a_m>0";
    else
      out.clause = m % 2 == 0 ? "m>2n+1 but m even" : "m>2n+1 but a_m<=0";
    return out;
  }
  out.pass = false;
  out.clause = "m<2n+1";
  return out;
}

namespace {

json witness_of(const SignWitness& w) {
  json j;
  j["x"] = to_string(*w.witness_x);
  j["exact"] = w.witness_exact;
  if (w.root_bracket) j["root_bracket"] = {to_string(w.root_bracket->first), to_string(w.root_bracket->second)};
  return j;
}

json witness_of(const branches::BranchPoint& bp) {
  return {{"w", bp.w}, {"x1", bp.x1}, {"x2", bp.x2}, {"F1", bp.F1}, {"F2", bp.F2}};
}

}  // namespace

Verdict decide_global_center(const LienardSystem& sys, const branches::ToleranceOptions& opts) {
  Verdict v;
  ConditionReport& rep = v.report;
  auto fail_reason = [&](const char* name) {
    if (v.reason.empty()) v.reason = name;
  };

  SignWitness ci = check_condition_i(sys);
  rep.i.status = ci.verdict ? Status::Pass : Status::Fail;
  if (!ci.verdict) {
    rep.i.witness = witness_of(ci);
    fail_reason("i");
  }

  LocalType local = classify_local(sys);
  const bool linear = local.kind == LocalKind::LinearCandidate;
  const bool nilpotent = local.kind == LocalKind::NilpotentCandidate;
  json local_detail = {{"r", sys.r()}, {"s", sys.s()}, {"a_r", to_string(sys.a_r())},
                       {"clause", local.clause}};
  if (local.nilpotent_threshold) local_detail["threshold"] = to_string(*local.nilpotent_threshold);
  rep.ii.status = linear ? Status::Pass : Status::Fail;
  rep.ii_star.status = nilpotent ? Status::Pass : Status::Fail;
  rep.ii.witness = local_detail;
  rep.ii_star.witness = local_detail;
  if (!linear && !nilpotent) fail_reason(sys.r() == 1 ? "ii" : "ii_star");

  ConditionIII ciii = check_condition_iii(sys);
  rep.epsilon = ciii.epsilon;
  rep.iii.status = ciii.pass ? Status::Pass : Status::Fail;
  rep.iii.witness = {{"m", sys.m()}, {"n", sys.n()}, {"a_m", to_string(sys.a_m())},
                     {"b_n", to_string(sys.b_n())}, {"clause", ciii.clause}};
  if (ciii.threshold) rep.iii.witness["threshold"] = to_string(*ciii.threshold);
  if (!ciii.pass) fail_reason("iii");

  if (!v.reason.empty()) {
    rep.iv.status = Status::Skipped;
    v.kind = VerdictKind::NotGlobalCenter;
    return v;
  }

  branches::BranchContext ctx(sys);
  branches::IvResult iv = branches::check_condition_iv(ctx, opts);
  rep.iv.witness = {{"method", iv.method}, {"samples_used", iv.samples_used},
                    {"status", branches::to_string(iv.status)}};
  switch (iv.status) {
    case branches::IvStatus::HoldsExact:
      rep.iv.status = Status::Pass;
      v.kind = linear ? VerdictKind::GlobalCenterLinear : VerdictKind::GlobalCenterNilpotent;
      break;
    case branches::IvStatus::HoldsNumeric:
      rep.iv.status = Status::NumericPass;
      v.kind = VerdictKind::NumericInconclusive;
      break;
    case branches::IvStatus::Fails:
      rep.iv.status = Status::Fail;
      rep.iv.witness["counterexample"] = witness_of(*iv.counterexample);
      v.kind = VerdictKind::NotGlobalCenter;
      fail_reason("iv");
      break;
  }
  return v;
}

std::optional<QuinticForm> quintic_normal_form(const LienardSystem& sys) {
  const Polynomial& g = sys.g();
  const Polynomial& f = sys.f();
  if (g.degree() > 5 || f.degree() > 4)
    throw Error(ErrorCode::InvalidArgument, "quintic normal form needs deg g <= 5 and deg f <= 4");
  if (!(f.degree() == 1 && f.coeff(0) == 0)) return std::nullopt;
  if (g.degree() != 5 || !g.is_odd()) return std::nullopt;
  const Rational a1 = g.coeff(1), a3 = g.coeff(3), a5 = g.coeff(5), b1 = f.coeff(1);
  QuinticForm out;
  if (a1 != 0) {
    if (a1 <= 0 || a5 <= 0)
      throw Error(ErrorCode::Domain, "quintic rescaling needs a_1 > 0 and a_5 > 0");
    const double A1 = a1.get_d(), A3 = a3.get_d(), A5 = a5.get_d(), B1 = b1.get_d();
    out.nilpotent = false;
    out.linear.a = A3 / std::sqrt(A1) / std::sqrt(A5);
    out.linear.b = B1 * std::pow(A1, -0.25) * std::pow(A5, -0.25);
    return out;
  }
  if (a3 == 0) return std::nullopt;
  if (a3 <= 0 || a5 <= 0)
    throw Error(ErrorCode::Domain, "quintic rescaling needs a_3 > 0 and a_5 > 0");
  out.nilpotent = true;
  out.nil.c = b1.get_d() / std::sqrt(a3.get_d());
  return out;
}

std::optional<Space> family_membership(int k, int l, const Rational& a, const Rational& b) {
  if (k < 1 || l < 1) throw Error(ErrorCode::InvalidArgument, "k and l must be >= 1");
  if (b == 0) {
    if (k > 1 && a > 0) return Space::S3;
    if (k == 1 && a > Rational(1, 8)) return Space::S4;
    return std::nullopt;
  }
  const Rational b_eff = l == 1 ? Rational(1 + b) : b;
  if (b_eff == 0) return std::nullopt;  // f vanishes identically
  const bool l_odd = l % 2 == 1;
  if (k > l && l_odd && a > 0) return Space::S1;
  if (k == l && l_odd && a > 0 && 4 * (l + 1) * a / (b_eff * b_eff) > 1) return Space::S2;
  return std::nullopt;
}

json to_json(const ConditionReport& report) {
  auto entry = [](const ConditionEntry& e) {
    json j = {{"status", to_string(e.status)}, {"witness", e.witness}};
    return j;
  };
  json j = {{"i", entry(report.i)},
            {"ii", entry(report.ii)},
            {"ii_star", entry(report.ii_star)},
            {"iii", entry(report.iii)},
            {"iv", entry(report.iv)}};
  j["iii"]["epsilon"] = report.epsilon ? json(to_string(*report.epsilon)) : json(nullptr);
  return j;
}

json to_json(const Verdict& verdict) {
  return {{"kind", to_string(verdict.kind)},
          {"reason", verdict.reason.empty() ? json(nullptr) : json(verdict.reason)},
          {"conditions", to_json(verdict.report)}};
}

}  // namespace lc::criteria

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "liencenter/branches.hpp"
#include "liencenter/system.hpp"

namespace lc::criteria {

enum class LocalKind { LinearCandidate, NilpotentCandidate, NotCandidate };

const char* to_string(LocalKind k);

struct LocalType {
  LocalKind kind = LocalKind::NotCandidate;
  /// Clause that decided the classification, e.g. "r=1, s>=1, a_r>0".
  std::string clause;
  /// b_s^2 - 2(r+1) a_r when r = 2s+1, otherwise absent.
  std::optional<Rational> nilpotent_threshold;
};

struct ConditionIII {
  bool pass = false;
  Rational epsilon;
  /// 4(n+1) a_m / b_n^2 when m = 2n+1.
  std::optional<Rational> threshold;
  std::string clause;
};

enum class Status { Pass, Fail, Skipped, NumericPass };

const char* to_string(Status s);

struct ConditionEntry {
  Status status = Status::Skipped;
  nlohmann::json witness;  // null when absent
};

struct ConditionReport {
  ConditionEntry i, ii, ii_star, iii, iv;
  std::optional<Rational> epsilon;
};

enum class VerdictKind { GlobalCenterLinear, GlobalCenterNilpotent, NotGlobalCenter, NumericInconclusive };

const char* to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::NotGlobalCenter;
  ConditionReport report;
  /// First failing condition in evaluation order ("i", "ii", "ii_star",
  /// "iii", "iv"), empty when none failed.
  std::string reason;
};

SignWitness check_condition_i(const LienardSystem& sys);
LocalType classify_local(const LienardSystem& sys);
ConditionIII check_condition_iii(const LienardSystem& sys);

/// Exact conditions first, then branch symmetry (parity shortcut, functional
/// shortcut, certified sampling).
Verdict decide_global_center(const LienardSystem& sys,
                             const branches::ToleranceOptions& opts = {});

struct QuinticLinear {
  double a;
  double b;
};
struct QuinticNilpotent {
  double c;
};
struct QuinticForm {
  bool nilpotent = false;
  QuinticLinear linear{};
  QuinticNilpotent nil{};
};

/// Reduced parameters of a quintic global-center candidate, or nullopt when
/// the system does not have the candidate shape. Throws Domain when a
/// fractional power would be taken of a nonpositive coefficient.
std::optional<QuinticForm> quintic_normal_form(const LienardSystem& sys);

enum class Space { S1, S2, S3, S4 };

const char* to_string(Space s);

/// Parameter space of x' = y, y' = -x - a x^{2k+1} - x y - b x^l y containing
/// (k, l, a, b), if any. For l = 1 the two damping terms merge into
/// (1 + b) x y, and the predicates are applied to that effective coefficient.
std::optional<Space> family_membership(int k, int l, const Rational& a, const Rational& b);

nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const Verdict& verdict);

}  // namespace lc::criteria

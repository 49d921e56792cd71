#include "liencenter/liencenter.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "liencenter/flow.hpp"
#include "liencenter/render.hpp"
#include "liencenter/report.hpp"

struct lc_system {
  lc::LienardSystem sys;
};

namespace {

thread_local std::string g_last_error;
thread_local long g_last_offset = -1;

lc_status status_of(lc::ErrorCode code) {
  switch (code) {
    case lc::ErrorCode::Parse: return LC_ERR_PARSE;
    case lc::ErrorCode::InvalidArgument: return LC_ERR_INVALID_ARGUMENT;
    case lc::ErrorCode::Domain: return LC_ERR_DOMAIN;
    case lc::ErrorCode::NonConvergence: return LC_ERR_NONCONVERGENCE;
    case lc::ErrorCode::StepUnderflow: return LC_ERR_STEP_UNDERFLOW;
    case lc::ErrorCode::MaxSteps: return LC_ERR_MAX_STEPS;
    case lc::ErrorCode::Escape: return LC_ERR_ESCAPE;
    case lc::ErrorCode::NoReturn: return LC_ERR_NO_RETURN;
    case lc::ErrorCode::Inconclusive: return LC_ERR_INCONCLUSIVE;
  }
  return LC_ERR_INTERNAL;
}

lc_status fail(lc_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs body, translating exceptions into status codes.
template <class F>
lc_status guarded(F&& body) {
  g_last_error.clear();
  g_last_offset = -1;
  try {
    body();
    return LC_OK;
  } catch (const lc::ParseError& e) {
    g_last_offset = static_cast<long>(e.offset());
    return fail(LC_ERR_PARSE, e.what());
  } catch (const lc::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LC_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw lc::Error(lc::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

lc::branches::ToleranceOptions tolerance(const lc_tolerance* t) {
  lc::branches::ToleranceOptions o;
  if (t) {
    o.tol_rel = t->tol_rel;
    o.samples = t->samples;
    o.use_shortcuts = t->use_shortcuts != 0;
  }
  if (!(o.tol_rel > 0.0)) throw lc::Error(lc::ErrorCode::InvalidArgument, "tol_rel must be positive");
  if (o.samples < 2) throw lc::Error(lc::ErrorCode::InvalidArgument, "samples must be at least 2");
  return o;
}

lc::flow::IntegratorConfig integrator(const lc_integrator* c) {
  lc::flow::IntegratorConfig o;
  if (c) {
    o.rel_tol = c->rel_tol;
    o.abs_tol = c->abs_tol;
    o.event_tol = c->event_tol;
    o.escape_radius = c->escape_radius;
    o.max_time = c->max_time;
    o.max_steps = c->max_steps;
  }
  if (!(o.max_time > 0.0) || o.max_steps == 0)
    throw lc::Error(lc::ErrorCode::InvalidArgument, "max_time and max_steps must be positive");
  return o;
}

lc_verdict verdict_of(lc::criteria::VerdictKind k) {
  switch (k) {
    case lc::criteria::VerdictKind::GlobalCenterLinear: return LC_GLOBAL_CENTER_LINEAR;
    case lc::criteria::VerdictKind::GlobalCenterNilpotent: return LC_GLOBAL_CENTER_NILPOTENT;
    case lc::criteria::VerdictKind::NotGlobalCenter: return LC_NOT_GLOBAL_CENTER;
    case lc::criteria::VerdictKind::NumericInconclusive: return LC_NUMERIC_INCONCLUSIVE;
  }
  return LC_NUMERIC_INCONCLUSIVE;
}

lc_verdict verdict_of(const nlohmann::json& report) {
  const std::string kind = report.at("verdict").at("kind").get<std::string>();
  if (kind == "GlobalCenterLinear") return LC_GLOBAL_CENTER_LINEAR;
  if (kind == "GlobalCenterNilpotent") return LC_GLOBAL_CENTER_NILPOTENT;
  if (kind == "NotGlobalCenter") return LC_NOT_GLOBAL_CENTER;
  return LC_NUMERIC_INCONCLUSIVE;
}

}  // namespace

extern "C" {

void lc_tolerance_default(lc_tolerance* out) {
  if (!out) return;
  lc::branches::ToleranceOptions o;
  out->tol_rel = o.tol_rel;
  out->samples = o.samples;
  out->use_shortcuts = o.use_shortcuts ? 1 : 0;
}

void lc_integrator_default(lc_integrator* out) {
  if (!out) return;
  lc::flow::IntegratorConfig o;
  out->rel_tol = o.rel_tol;
  out->abs_tol = o.abs_tol;
  out->event_tol = o.event_tol;
  out->escape_radius = o.escape_radius;
  out->max_time = o.max_time;
  out->max_steps = o.max_steps;
}

const char* lc_version(void) { return LIENCENTER_VERSION; }

const char* lc_status_name(lc_status status) {
  switch (status) {
    case LC_OK: return "ok";
    case LC_ERR_PARSE: return "parse";
    case LC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case LC_ERR_DOMAIN: return "domain";
    case LC_ERR_NONCONVERGENCE: return "non-convergence";
    case LC_ERR_STEP_UNDERFLOW: return "step-underflow";
    case LC_ERR_MAX_STEPS: return "max-steps";
    case LC_ERR_ESCAPE: return "escape";
    case LC_ERR_NO_RETURN: return "no-return";
    case LC_ERR_INCONCLUSIVE: return "inconclusive";
    case LC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* lc_last_error(void) { return g_last_error.c_str(); }

long lc_last_error_offset(void) { return g_last_offset; }

void lc_string_free(char* s) { std::free(s); }

lc_status lc_system_parse(const char* f, const char* g, lc_system** out) {
  return guarded([&] {
    require(f, "f");
    require(g, "g");
    require(out, "out");
    *out = nullptr;
    *out = new lc_system{lc::LienardSystem::parse(f, g)};
  });
}

lc_status lc_system_odd_family(int k, int l, const char* a, const char* b, lc_system** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = nullptr;
    *out = new lc_system{lc::odd_family_system(k, l, lc::parse_rational(a), lc::parse_rational(b))};
  });
}

void lc_system_free(lc_system* sys) { delete sys; }

lc_status lc_system_describe(const lc_system* sys, char** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    *out = dup(sys->sys.describe());
  });
}

lc_status lc_check(const lc_system* sys, const lc_tolerance* tol, lc_verdict* verdict, char** report_json) {
  return guarded([&] {
    require(sys, "sys");
    auto j = lc::report::check_report(sys->sys, tolerance(tol));
    if (verdict) *verdict = verdict_of(j);
    if (report_json) *report_json = dup(j.dump(2));
  });
}

lc_status lc_classify_infinity(const lc_system* sys, char** json) {
  return guarded([&] {
    require(sys, "sys");
    require(json, "json");
    nlohmann::json j = {{"schema", lc::report::kSchemaVersion},
                        {"system", {{"f", sys->sys.f().to_string()}, {"g", sys->sys.g().to_string()}}},
                        {"infinity", lc::report::infinity_json(sys->sys)}};
    *json = dup(j.dump(2));
  });
}

lc_status lc_verify(const lc_system* sys, const lc_tolerance* tol, const lc_integrator* cfg, const double* seeds,
                    size_t n_seeds, lc_verdict* verdict, int* oracle_conflict, char** report_json) {
  return guarded([&] {
    require(sys, "sys");
    lc::report::VerifyOptions vopts;
    vopts.cfg = integrator(cfg);
    if (n_seeds > 0) {
      require(seeds, "seeds");
      vopts.seeds.assign(seeds, seeds + n_seeds);
    }
    auto j = lc::report::verify_report(sys->sys, tolerance(tol), vopts);
    if (verdict) *verdict = verdict_of(j);
    if (oracle_conflict) *oracle_conflict = j["oracle_conflict"].get<bool>() ? 1 : 0;
    if (report_json) *report_json = dup(j.dump(2));
  });
}

lc_status lc_portrait(const lc_system* sys, const double* seeds, size_t n_seeds, unsigned disc_px,
                      int include_infinity, unsigned turns, char** svg) {
  return guarded([&] {
    require(sys, "sys");
    require(svg, "svg");
    if (n_seeds > 0) require(seeds, "seeds");
    lc::render::PortraitSpec spec{sys->sys};
    if (n_seeds > 0) spec.seed_radii.assign(seeds, seeds + n_seeds);
    spec.disc_px = disc_px;
    spec.include_infinity = include_infinity != 0;
    spec.turns = turns;
    *svg = dup(lc::render::render_portrait(spec));
  });
}

lc_status lc_family_quintic(const lc_system* sys, char** json) {
  return guarded([&] {
    require(sys, "sys");
    require(json, "json");
    *json = dup(lc::report::family_quintic_report(sys->sys).dump(2));
  });
}

lc_status lc_family_odd(int k, int l, const char* a, const char* b, const lc_tolerance* tol, char** json) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(json, "json");
    auto j = lc::report::family_odd_report(k, l, lc::parse_rational(a), lc::parse_rational(b), tolerance(tol));
    *json = dup(j.dump(2));
  });
}

lc_status lc_return_map(const lc_system* sys, double y0, const lc_integrator* cfg, double* y_ret, double* t_ret) {
  return guarded([&] {
    require(sys, "sys");
    auto c = lc::flow::return_map(sys->sys, y0, integrator(cfg));
    if (y_ret) *y_ret = c.y;
    if (t_ret) *t_ret = c.t;
  });
}

lc_status lc_trajectory_csv(const lc_system* sys, double x0, double y0, double t0, double t1,
                            const lc_integrator* cfg, char** csv) {
  return guarded([&] {
    require(sys, "sys");
    require(csv, "csv");
    auto traj = lc::flow::integrate(sys->sys, {x0, y0}, t0, t1, integrator(cfg));
    std::ostringstream os;
    lc::flow::write_csv(traj, os);
    *csv = dup(os.str());
  });
}

}  // extern "C"

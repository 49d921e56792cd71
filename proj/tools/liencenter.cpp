// Command-line front end over the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liencenter/liencenter.h"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 3;
constexpr int kExitNumeric = 4;

struct Owned {
  char* p = nullptr;
  ~Owned() { lc_string_free(p); }
};

using SystemPtr = std::unique_ptr<lc_system, decltype(&lc_system_free)>;

struct Failure {
  int exit_code;
};

int exit_for(lc_status s) {
  switch (s) {
    case LC_ERR_PARSE:
    case LC_ERR_INVALID_ARGUMENT:
    case LC_ERR_DOMAIN: return kExitUsage;
    default: return kExitNumeric;
  }
}

void check_status(lc_status s) {
  if (s == LC_OK) return;
  std::string msg = lc_last_error();
  std::fprintf(stderr, "liencenter: %s error: %s\n", lc_status_name(s), msg.c_str());
  throw Failure{exit_for(s)};
}

SystemPtr load_system(const std::string& f, const std::string& g) {
  lc_system* raw = nullptr;
  check_status(lc_system_parse(f.c_str(), g.c_str(), &raw));
  return SystemPtr(raw, &lc_system_free);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) {
    std::fprintf(stderr, "liencenter: cannot write %s\n", out_path.c_str());
    throw Failure{kExitUsage};
  }
  os << text;
  if (!text.empty() && text.back() != '\n') os << '\n';
}

std::string num(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string text_conditions(const json& conds) {
  std::string out = "condition  status        detail\n";
  for (const char* key : {"i", "ii", "ii_star", "iii", "iv"}) {
    const json& c = conds.at(key);
    std::string detail;
    const json& w = c.at("witness");
    if (w.is_object()) {
      if (w.contains("clause")) detail = w["clause"].get<std::string>();
      else if (w.contains("x")) detail = "witness x=" + w["x"].get<std::string>();
      else if (w.contains("method")) detail = "method " + w["method"].get<std::string>();
      if (w.contains("counterexample")) {
        const json& ce = w["counterexample"];
        detail += ", F(x1)=" + num(ce["F1"]) + " vs F(x2)=" + num(ce["F2"]) + " at x1=" + num(ce["x1"]) +
                  ", x2=" + num(ce["x2"]);
      }
    }
    char line[64];
    std::snprintf(line, sizeof line, "%-10s %-13s ", key, c.at("status").get<std::string>().c_str());
    out += line + detail + "\n";
  }
  if (!conds.at("iii").at("epsilon").is_null()) out += "epsilon    " + num(conds["iii"]["epsilon"]) + "\n";
  return out;
}

std::string text_infinity(const json& inf) {
  if (inf.contains("error")) return "infinity: " + inf["error"].get<std::string>() + "\n";
  std::string out = "infinity: row " + std::to_string(inf["row"].get<int>()) + " (" +
                    inf["condition"].get<std::string>() + "), " + inf["figure"].get<std::string>() + "\n";
  out += "connection at infinity: " + std::string(inf["connection_at_infinity"].get<bool>() ? "yes" : "no") + "\n";
  for (const auto& e : inf["equilibria"]) {
    out += "  " + e["name"].get<std::string>() + ": " + e["type"].get<std::string>();
    if (!e["sectors"].get<std::string>().empty()) out += " (" + e["sectors"].get<std::string>() + ")";
    out += "\n";
  }
  return out;
}

std::string text_report(const json& r) {
  std::string out;
  out += "system: f = " + r["system"]["f"].get<std::string>() + ", g = " + r["system"]["g"].get<std::string>() + "\n";
  out += "verdict: " + r["verdict"]["kind"].get<std::string>();
  if (!r["verdict"]["reason"].is_null()) out += " (condition " + r["verdict"]["reason"].get<std::string>() + ")";
  out += "\n" + text_conditions(r["verdict"]["conditions"]);
  out += text_infinity(r["infinity"]);
  out += "boundedness: " + num(r["boundedness"]) + "\n";
  if (r.contains("oracle")) {
    const json& o = r["oracle"];
    out += "oracle: " + std::string(o["closed"].get<bool>() ? "closed" : "not closed") +
           ", max error " + num(o["max_error"]) + "\n";
    out += "  y0                   orbit      outcome     error\n";
    for (const auto& p : o["probes"]) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-20s %-10s %-11s %s\n", num(p["y0"]).c_str(),
                    p["orbit"].get<std::string>().c_str(), p["outcome"].get<std::string>().c_str(),
                    num(p["error"]).c_str());
      out += line;
    }
    if (!o["observed_boundedness"].is_null()) out += "escape probes: " + num(o["observed_boundedness"]) + "\n";
    out += "oracle conflict: " + std::string(r["oracle_conflict"].get<bool>() ? "YES" : "no") + "\n";
    for (const auto& c : r["conflicts"]) out += "  " + c.get<std::string>() + "\n";
  }
  return out;
}

int verdict_exit(lc_verdict v) {
  switch (v) {
    case LC_GLOBAL_CENTER_LINEAR:
    case LC_GLOBAL_CENTER_NILPOTENT: return 0;
    case LC_NOT_GLOBAL_CENTER: return 1;
    case LC_NUMERIC_INCONCLUSIVE: return 2;
  }
  return 2;
}

struct Common {
  std::string f;
  std::string g;
  std::string out;
  bool text = false;
  std::size_t samples = 0;
  double tol = 0.0;
  std::vector<double> seeds;
};

lc_tolerance tolerance_of(const Common& c) {
  lc_tolerance t;
  lc_tolerance_default(&t);
  if (c.samples) t.samples = c.samples;
  if (c.tol > 0.0) t.tol_rel = c.tol;
  return t;
}

void add_system_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--f", c.f, "damping f(x)")->required();
  cmd->add_option("--g", c.g, "restoring force g(x)")->required();
  cmd->add_option("--out", c.out, "output file (default stdout)");
  cmd->add_flag("--text", c.text, "human-readable output instead of JSON");
}

void add_tolerance_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--samples", c.samples, "levels sampled for condition (iv) (default 256)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  cmd->add_option("--tol", c.tol, "relative tolerance for condition (iv) (default 1e-9)")
      ->check(CLI::PositiveNumber);
}

int run(int argc, char** argv) {
  CLI::App app{"Global centers of polynomial Lienard systems x' = y, y' = -g(x) - f(x) y"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lc_version()));

  Common c;
  auto* check = app.add_subcommand("check", "decide whether the origin is a global center");
  add_system_flags(check, c);
  add_tolerance_flags(check, c);

  auto* infinity = app.add_subcommand("classify-infinity", "equilibria at infinity");
  add_system_flags(infinity, c);

  auto* verify = app.add_subcommand("verify", "decide, then cross-check with return-map and escape probes");
  add_system_flags(verify, c);
  add_tolerance_flags(verify, c);
  verify->add_option("--seeds", c.seeds, "probe amplitudes y0 (default 0.5,5,50)")->delimiter(',');

  unsigned px = 600, turns = 1;
  bool no_infinity = false;
  auto* portrait = app.add_subcommand("portrait", "Poincare-disc phase portrait as SVG");
  add_system_flags(portrait, c);
  portrait->add_option("--seeds", c.seeds, "orbit seeds y0 on the positive y-axis")->delimiter(',');
  portrait->add_option("--px", px, "disc size in pixels")->check(CLI::Range(100u, 20000u));
  portrait->add_option("--turns", turns, "returns to the y-axis per orbit")->check(CLI::Range(1u, 1000u));
  portrait->add_flag("--no-infinity", no_infinity, "omit equilibria at infinity");

  double y0 = 1.0, t_end = 10.0;
  auto* trajectory = app.add_subcommand("trajectory", "integrate from (0, y0) and dump t,x,y as CSV");
  add_system_flags(trajectory, c);
  trajectory->add_option("--y0", y0, "initial ordinate");
  trajectory->add_option("--t1", t_end, "final time");

  auto* family = app.add_subcommand("family", "membership in the closed-form families");
  family->require_subcommand(1);
  auto* quintic = family->add_subcommand("quintic", "reduced parameters of a quintic candidate");
  add_system_flags(quintic, c);
  int k = 1, l = 1;
  std::string a_text, b_text;
  auto* odd = family->add_subcommand("odd", "x' = y, y' = -x - a x^(2k+1) - x y - b x^l y");
  odd->add_option("--k", k, "k >= 1")->required();
  odd->add_option("--l", l, "l >= 1")->required();
  odd->add_option("--a", a_text, "rational a")->required();
  odd->add_option("--b", b_text, "rational b")->required();
  odd->add_option("--out", c.out, "output file (default stdout)");
  odd->add_flag("--text", c.text, "human-readable output instead of JSON");
  add_tolerance_flags(odd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) {
      auto sys = load_system(c.f, c.g);
      lc_tolerance tol = tolerance_of(c);
      lc_verdict v;
      Owned js;
      check_status(lc_check(sys.get(), &tol, &v, &js.p));
      emit(c.text ? text_report(json::parse(js.p)) : std::string(js.p), c.out);
      return verdict_exit(v);
    }
    if (infinity->parsed()) {
      auto sys = load_system(c.f, c.g);
      Owned js;
      check_status(lc_classify_infinity(sys.get(), &js.p));
      emit(c.text ? text_infinity(json::parse(js.p)["infinity"]) : std::string(js.p), c.out);
      return 0;
    }
    if (verify->parsed()) {
      auto sys = load_system(c.f, c.g);
      lc_tolerance tol = tolerance_of(c);
      lc_verdict v;
      int conflict = 0;
      Owned js;
      check_status(lc_verify(sys.get(), &tol, nullptr, c.seeds.data(), c.seeds.size(), &v, &conflict, &js.p));
      emit(c.text ? text_report(json::parse(js.p)) : std::string(js.p), c.out);
      if (conflict) std::fprintf(stderr, "liencenter: oracle disagrees with the verdict\n");
      return verdict_exit(v);
    }
    if (portrait->parsed()) {
      auto sys = load_system(c.f, c.g);
      Owned svg;
      check_status(lc_portrait(sys.get(), c.seeds.data(), c.seeds.size(), px, no_infinity ? 0 : 1, turns, &svg.p));
      emit(svg.p, c.out);
      return 0;
    }
    if (trajectory->parsed()) {
      auto sys = load_system(c.f, c.g);
      Owned csv;
      check_status(lc_trajectory_csv(sys.get(), 0.0, y0, 0.0, t_end, nullptr, &csv.p));
      emit(csv.p, c.out);
      return 0;
    }
    if (quintic->parsed()) {
      auto sys = load_system(c.f, c.g);
      Owned js;
      check_status(lc_family_quintic(sys.get(), &js.p));
      json j = json::parse(js.p);
      if (c.text) {
        std::string out = "family: " + num(j["family"]) + "\n";
        if (j.contains("params"))
          for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
            out += it.key() + " = " + num(it.value()) + "\n";
        out += "member: " + std::string(j["member"].get<bool>() ? "yes" : "no") + "\n";
        emit(out, c.out);
      } else {
        emit(js.p, c.out);
      }
      return j["member"].get<bool>() ? 0 : 1;
    }
    if (odd->parsed()) {
      lc_tolerance tol = tolerance_of(c);
      Owned js;
      check_status(lc_family_odd(k, l, a_text.c_str(), b_text.c_str(), &tol, &js.p));
      json j = json::parse(js.p);
      if (c.text) {
        std::string out = "space: " + num(j["space"]) + "\n";
        if (!j["verdict"].is_null()) out += "verdict: " + j["verdict"]["kind"].get<std::string>() + "\n";
        out += "agrees: " + std::string(j["agrees"].get<bool>() ? "yes" : "no") + "\n";
        emit(out, c.out);
      } else {
        emit(js.p, c.out);
      }
      return j["space"].is_null() ? 1 : 0;
    }
  } catch (const Failure& f) {
    return f.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "liencenter: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

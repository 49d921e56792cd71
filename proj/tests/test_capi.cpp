#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <string>

#include "liencenter/liencenter.h"

using nlohmann::json;

namespace {

struct Sys {
  lc_system* p = nullptr;
  ~Sys() { lc_system_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  lc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("defaults and names") {
  lc_tolerance t;
  lc_tolerance_default(&t);
  CHECK(t.tol_rel == 1e-9);
  CHECK(t.use_shortcuts == 1);
  lc_integrator c;
  lc_integrator_default(&c);
  CHECK(c.rel_tol == 1e-10);
  CHECK(c.abs_tol == 1e-12);
  CHECK(c.event_tol == 1e-12);
  CHECK(c.escape_radius == 1e6);
  CHECK(std::strlen(lc_version()) > 0);
  CHECK(std::string(lc_status_name(LC_OK)) == "ok");
  CHECK(std::string(lc_status_name(LC_ERR_PARSE)) == "parse");
}

TEST_CASE("parse errors report offsets") {
  lc_system* s = reinterpret_cast<lc_system*>(1);
  CHECK(lc_system_parse("x + * 2", "x", &s) == LC_ERR_PARSE);
  CHECK(s == nullptr);
  CHECK(lc_last_error_offset() == 4);
  CHECK(std::string(lc_last_error()).find("byte 4") != std::string::npos);
  Sys ok;
  CHECK(lc_system_parse("x", "x", &ok.p) == LC_OK);
  CHECK(lc_last_error_offset() == -1);
  CHECK(std::string(lc_last_error()).empty());
}

TEST_CASE("null arguments") {
  CHECK(lc_system_parse(nullptr, "x", nullptr) == LC_ERR_INVALID_ARGUMENT);
  CHECK(lc_check(nullptr, nullptr, nullptr, nullptr) == LC_ERR_INVALID_ARGUMENT);
  CHECK(std::string(lc_last_error()).find("NULL") != std::string::npos);
  lc_system_free(nullptr);
  lc_string_free(nullptr);
}

TEST_CASE("check and describe") {
  Sys s;
  REQUIRE(lc_system_parse("x", "x + x^3 + x^5", &s.p) == LC_OK);
  char* d = nullptr;
  REQUIRE(lc_system_describe(s.p, &d) == LC_OK);
  CHECK(take(d).find("x + x^3 + x^5") != std::string::npos);

  lc_verdict v = LC_NUMERIC_INCONCLUSIVE;
  char* js = nullptr;
  REQUIRE(lc_check(s.p, nullptr, &v, &js) == LC_OK);
  CHECK(v == LC_GLOBAL_CENTER_LINEAR);
  auto j = json::parse(take(js));
  CHECK(j["schema"] == 1);
  CHECK(j["verdict"]["kind"] == "GlobalCenterLinear");

  Sys bad;
  REQUIRE(lc_system_parse("x", "x - 2x^3 + x^5", &bad.p) == LC_OK);
  REQUIRE(lc_check(bad.p, nullptr, &v, nullptr) == LC_OK);
  CHECK(v == LC_NOT_GLOBAL_CENTER);
}

TEST_CASE("domain errors") {
  Sys s;
  CHECK(lc_system_parse("0", "x", &s.p) != LC_OK);
  CHECK(lc_system_odd_family(0, 1, "1", "1", &s.p) != LC_OK);
  CHECK(lc_system_odd_family(1, 1, "1/0", "1", &s.p) != LC_OK);
}

TEST_CASE("verify, infinity and families") {
  Sys s;
  REQUIRE(lc_system_parse("x^2", "x + x^5", &s.p) == LC_OK);
  lc_verdict v;
  int conflict = -1;
  char* js = nullptr;
  const double seeds[] = {1.0};
  REQUIRE(lc_verify(s.p, nullptr, nullptr, seeds, 1, &v, &conflict, &js) == LC_OK);
  CHECK(v == LC_NOT_GLOBAL_CENTER);
  CHECK(conflict == 0);
  auto j = json::parse(take(js));
  CHECK(j["oracle"]["closed"] == false);

  REQUIRE(lc_classify_infinity(s.p, &js) == LC_OK);
  CHECK(json::parse(take(js))["infinity"]["connection_at_infinity"] == false);

  Sys q;
  REQUIRE(lc_system_parse("x", "x + 2x^3 + 4x^5", &q.p) == LC_OK);
  REQUIRE(lc_family_quintic(q.p, &js) == LC_OK);
  CHECK(json::parse(take(js)).is_object());

  REQUIRE(lc_family_odd(3, 1, "1", "5", nullptr, &js) == LC_OK);
  auto o = json::parse(take(js));
  CHECK(o["space"] == "S1");
  CHECK(o["agrees"] == true);
}

TEST_CASE("flow through the C interface") {
  Sys s;
  REQUIRE(lc_system_parse("x", "x + x^3 + x^5", &s.p) == LC_OK);
  double y = 0, t = 0;
  REQUIRE(lc_return_map(s.p, 1.0, nullptr, &y, &t) == LC_OK);
  CHECK(std::fabs(y - 1.0) < 1e-6);
  CHECK(t > 0.0);
  CHECK(lc_return_map(s.p, -1.0, nullptr, &y, &t) == LC_ERR_INVALID_ARGUMENT);

  Sys u;
  REQUIRE(lc_system_parse("-1", "x", &u.p) == LC_OK);
  lc_integrator c;
  lc_integrator_default(&c);
  c.escape_radius = 10.0;
  CHECK(lc_return_map(u.p, 1.0, &c, &y, &t) == LC_ERR_ESCAPE);

  char* csv = nullptr;
  REQUIRE(lc_trajectory_csv(s.p, 0.0, 1.0, 0.0, 1.0, nullptr, &csv) == LC_OK);
  CHECK(take(csv).rfind("t,x,y\n0,0,1\n", 0) == 0);

  char* svg = nullptr;
  const double seeds[] = {0.5, 1.0};
  REQUIRE(lc_portrait(s.p, seeds, 2, 300, 1, 1, &svg) == LC_OK);
  CHECK(take(svg).find("<svg") != std::string::npos);
  CHECK(lc_portrait(s.p, seeds, 2, 50, 1, 1, &svg) == LC_ERR_INVALID_ARGUMENT);
}

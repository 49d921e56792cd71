#include <doctest.h>

#include <cmath>
#include <regex>

#include "liencenter/render.hpp"

using namespace lc;
using render::PortraitSpec;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

PortraitSpec spec_for(LienardSystem s, std::vector<double> seeds) {
  PortraitSpec sp{std::move(s)};
  sp.seed_radii = std::move(seeds);
  return sp;
}

}  // namespace

TEST_CASE("poincare projection") {
  auto o = render::poincare_projection(0, 0);
  CHECK(o[0] == 0.0);
  CHECK(o[1] == 0.0);
  auto far = render::poincare_projection(1e12, 0);
  CHECK(far[0] < 1.0);
  CHECK(far[0] == doctest::Approx(1.0));
  auto p = render::poincare_projection(3, 4);
  CHECK(p[0] == doctest::Approx(3.0 / (1.0 + std::sqrt(26.0))));
  CHECK(p[1] == doctest::Approx(4.0 / (1.0 + std::sqrt(26.0))));
}

TEST_CASE("quintic global center portrait") {
  auto sp = spec_for(quintic_linear_system(0, 1), {0.5, 1, 2, 4});
  auto svg = render::render_portrait(sp);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("viewBox=\"0 0 600 600\"") != std::string::npos);
  CHECK(count(svg, "<polyline class=\"orbit\"") == 4);
  CHECK(count(svg, "orbit failed") == 0);
  CHECK(svg.find(">I_B+</text>") != std::string::npos);
  CHECK(svg.find(">I_B-</text>") != std::string::npos);

  auto paths = render::trace_orbits(sp);
  REQUIRE(paths.size() == 4);
  for (const auto& p : paths) {
    CHECK_FALSE(p.failed);
    CHECK(p.points.size() <= render::kMaxPoints);
    const auto &a = p.points.front(), &b = p.points.back();
    CHECK(std::hypot(a[0] - b[0], a[1] - b[1]) <= 1.0);
  }
  // Nested: larger seeds start higher in pixel space (smaller row).
  for (std::size_t i = 1; i < paths.size(); ++i) CHECK(paths[i].points.front()[1] < paths[i - 1].points.front()[1]);
}

TEST_CASE("I_B markers sit on the vertical boundary") {
  auto svg = render::render_portrait(spec_for(quintic_linear_system(0, 1), {}));
  std::smatch m;
  std::regex eq("<circle class=\"equilibrium\" cx=\"([0-9.]+)\" cy=\"([0-9.]+)\"");
  int found = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), eq); it != std::sregex_iterator(); ++it) {
    CHECK(std::stod((*it)[1]) == doctest::Approx(300.0));
    ++found;
  }
  CHECK(found == 2);
}

TEST_CASE("spiral for a positively bounded system") {
  auto paths = render::trace_orbits(spec_for(LienardSystem::parse("x^2", "x + x^5"), {2}));
  REQUIRE(paths.size() == 1);
  const auto& p = paths[0];
  CHECK_FALSE(p.failed);
  // Pixel rows grow downward: the return lies below the start on the y-axis.
  CHECK(p.points.back()[1] > p.points.front()[1] + 1.0);
  CHECK(p.points.back()[0] == doctest::Approx(300.0).epsilon(1e-6));
}

TEST_CASE("empty seeds draw the outline and markers only") {
  auto svg = render::render_portrait(spec_for(quintic_linear_system(0, 1), {}));
  CHECK(count(svg, "<polyline") == 0);
  CHECK(count(svg, "id=\"boundary\"") == 1);
  CHECK(count(svg, "class=\"equilibrium\"") == 2);
  auto sp = spec_for(quintic_linear_system(0, 1), {});
  sp.include_infinity = false;
  CHECK(count(render::render_portrait(sp), "class=\"equilibrium\"") == 0);
}

TEST_CASE("determinism") {
  auto sp = spec_for(LienardSystem::parse("x + x^2", "x + x^3"), {0.5, 1, 3});
  CHECK(render::render_portrait(sp) == render::render_portrait(sp));
}

TEST_CASE("n_orbits limits the drawn seeds") {
  auto sp = spec_for(quintic_linear_system(0, 1), {0.5, 1, 2});
  sp.n_orbits = 2;
  CHECK(render::trace_orbits(sp).size() == 2);
}

TEST_CASE("failed orbits are marked") {
  auto sp = spec_for(LienardSystem::parse("-1", "x"), {1});
  sp.cfg.escape_radius = 10.0;
  auto svg = render::render_portrait(sp);
  CHECK(count(svg, "orbit failed") == 1);
  CHECK(count(svg, "class=\"failure\"") == 1);
}

TEST_CASE("invalid specs") {
  auto sp = spec_for(quintic_linear_system(0, 1), {1, 0.5});
  CHECK_THROWS_AS(render::render_portrait(sp), Error);
  sp.seed_radii = {-1};
  CHECK_THROWS_AS(render::render_portrait(sp), Error);
  sp.seed_radii = {1};
  sp.disc_px = 99;
  CHECK_THROWS_AS(render::render_portrait(sp), Error);
}

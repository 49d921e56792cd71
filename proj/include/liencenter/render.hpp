#pragma once

#include <string>
#include <vector>

#include "liencenter/flow.hpp"
#include "liencenter/system.hpp"

namespace lc::render {

struct PortraitSpec {
  LienardSystem sys;
  /// Orbits drawn from the front of seed_radii; 0 draws every seed.
  std::size_t n_orbits = 0;
  /// Each orbit starts at (0, seed).
  std::vector<double> seed_radii;
  unsigned disc_px = 600;
  bool include_infinity = true;
  /// Returns to the positive y-axis before an orbit stops.
  unsigned turns = 1;
  flow::IntegratorConfig cfg{};
};

struct OrbitPath {
  double seed = 0.0;
  /// Pixel coordinates, at most kMaxPoints.
  std::vector<std::array<double, 2>> points;
  bool failed = false;
  std::string note;
};

inline constexpr std::size_t kMaxPoints = 10000;

/// (x, y) / (1 + sqrt(1 + x^2 + y^2)), inside the open unit disc.
std::array<double, 2> poincare_projection(double x, double y);

/// Orbits traced and projected to pixel space.
std::vector<OrbitPath> trace_orbits(const PortraitSpec& spec);

/// SVG 1.1 document. Byte-identical for identical specs.
std::string render_portrait(const PortraitSpec& spec);

}  // namespace lc::render

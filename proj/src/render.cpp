#include "liencenter/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "liencenter/infinity.hpp"
#include "liencenter/parallel.hpp"

namespace lc::render {

namespace {

constexpr std::size_t kSamplesPerStep = 4;

struct Frame {
  double center;
  double radius;
  std::array<double, 2> to_px(double x, double y) const {
    auto p = poincare_projection(x, y);
    return {center + radius * p[0], center - radius * p[1]};
  }
};

Frame frame_for(unsigned disc_px) {
  const double half = disc_px / 2.0;
  const double margin = std::max(28.0, disc_px * 0.06);
  return {half, half - margin};
}

void validate(const PortraitSpec& spec) {
  if (spec.disc_px < 100) throw Error(ErrorCode::InvalidArgument, "disc_px must be at least 100");
  for (std::size_t i = 0; i < spec.seed_radii.size(); ++i) {
    double s = spec.seed_radii[i];
    if (!(s > 0.0) || !std::isfinite(s))
      throw Error(ErrorCode::InvalidArgument, "seed radii must be positive and finite");
    if (i > 0 && !(s > spec.seed_radii[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "seed radii must be strictly increasing");
  }
  if (spec.turns == 0) throw Error(ErrorCode::InvalidArgument, "turns must be at least 1");
}

std::vector<std::array<double, 2>> thin(std::vector<std::array<double, 2>> pts) {
  if (pts.size() <= kMaxPoints) return pts;
  std::vector<std::array<double, 2>> out;
  out.reserve(kMaxPoints);
  const double stride = static_cast<double>(pts.size() - 1) / static_cast<double>(kMaxPoints - 1);
  for (std::size_t i = 0; i < kMaxPoints - 1; ++i)
    out.push_back(pts[static_cast<std::size_t>(std::floor(i * stride))]);
  out.push_back(pts.back());
  return out;
}

OrbitPath trace_one(const PortraitSpec& spec, const Frame& fr, double seed) {
  OrbitPath path;
  path.seed = seed;
  std::vector<std::array<double, 2>> pts;
  pts.push_back(fr.to_px(0.0, seed));
  unsigned crossings = 0;
  try {
    flow::Dopri5 solver(flow::lienard_field(spec.sys), spec.cfg);
    auto outcome = solver.run(0.0, {0.0, seed}, spec.cfg.max_time, [&](const flow::DenseStep& st) {
      auto tc = flow::upward_crossing(st, spec.cfg.event_tol);
      double t_stop = st.t1();
      bool done = false;
      if (tc && std::fabs(st.at(*tc)[1]) >= 1e-8 && ++crossings >= spec.turns) {
        t_stop = *tc;
        done = true;
      }
      for (std::size_t j = 1; j < kSamplesPerStep; ++j) {
        double t = st.t0 + st.h * static_cast<double>(j) / kSamplesPerStep;
        if ((t - t_stop) * st.h >= 0.0) break;
        auto s = st.at(t);
        pts.push_back(fr.to_px(s[0], s[1]));
      }
      auto s = done ? st.at(t_stop) : st.end();
      if (done) s[0] = 0.0;
      pts.push_back(fr.to_px(s[0], s[1]));
      return !done;
    });
    if (outcome.reason != flow::Termination::Stopped) {
      path.failed = true;
      path.note = outcome.reason == flow::Termination::EndTime ? "no return within time horizon"
                                                               : flow::to_string(outcome.reason);
    }
  } catch (const Error& e) {
    path.failed = true;
    path.note = e.what();
  }
  path.points = thin(std::move(pts));
  return path;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Boundary angle (degrees) of a named equilibrium at infinity; '+' points
// lie in the upper half-plane, I_A+ on the positive x direction.
std::optional<double> marker_angle(const std::string& name) {
  if (name.size() < 4) return std::nullopt;
  const bool plus = name.back() == '+';
  switch (name[2]) {
    case 'A': return plus ? 0.0 : 180.0;
    case 'B': return plus ? 90.0 : 270.0;
    case 'C': return plus ? 45.0 : 225.0;
    case 'D': return plus ? 135.0 : 315.0;
    default: return std::nullopt;
  }
}

}  // namespace

std::array<double, 2> poincare_projection(double x, double y) {
  const double d = 1.0 + std::sqrt(1.0 + x * x + y * y);
  return {x / d, y / d};
}

std::vector<OrbitPath> trace_orbits(const PortraitSpec& spec) {
  validate(spec);
  const Frame fr = frame_for(spec.disc_px);
  std::size_t count = spec.seed_radii.size();
  if (spec.n_orbits > 0) count = std::min(count, spec.n_orbits);
  std::vector<OrbitPath> paths(count);
  parallel_for(count, [&](std::size_t i) { paths[i] = trace_one(spec, fr, spec.seed_radii[i]); });
  return paths;
}

std::string render_portrait(const PortraitSpec& spec) {
  auto paths = trace_orbits(spec);
  const Frame fr = frame_for(spec.disc_px);
  const std::string size = std::to_string(spec.disc_px);
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + size + "\" height=\"" +
         size + "\" viewBox=\"0 0 " + size + " " + size + "\">\n";
  svg += "<title>" + xml_escape(spec.sys.describe()) + "</title>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + size + "\" height=\"" + size + "\" fill=\"#ffffff\"/>\n";
  const std::string c = fmt("%.3f", fr.center);
  const std::string r = fmt("%.3f", fr.radius);
  svg += "<g id=\"axes\" stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
  svg += "<line x1=\"" + fmt("%.3f", fr.center - fr.radius) + "\" y1=\"" + c + "\" x2=\"" +
         fmt("%.3f", fr.center + fr.radius) + "\" y2=\"" + c + "\"/>\n";
  svg += "<line x1=\"" + c + "\" y1=\"" + fmt("%.3f", fr.center - fr.radius) + "\" x2=\"" + c +
         "\" y2=\"" + fmt("%.3f", fr.center + fr.radius) + "\"/>\n";
  svg += "</g>\n";
  svg += "<circle id=\"boundary\" cx=\"" + c + "\" cy=\"" + c + "\" r=\"" + r +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";

  svg += "<g id=\"orbits\" fill=\"none\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    svg += "<polyline class=\"orbit";
    svg += p.failed ? " failed\" stroke=\"#c0392b\" stroke-dasharray=\"4 2\"" : "\" stroke=\"#1f4e9c\"";
    svg += " data-seed=\"" + fmt("%.17g", p.seed) + "\"";
    if (p.failed) svg += " data-note=\"" + xml_escape(p.note) + "\"";
    svg += " points=\"";
    for (std::size_t j = 0; j < p.points.size(); ++j) {
      if (j) svg += ' ';
      svg += fmt("%.3f", p.points[j][0]) + "," + fmt("%.3f", p.points[j][1]);
    }
    svg += "\"/>\n";
    if (p.failed && !p.points.empty()) {
      const auto& e = p.points.back();
      svg += "<circle class=\"failure\" cx=\"" + fmt("%.3f", e[0]) + "\" cy=\"" + fmt("%.3f", e[1]) +
             "\" r=\"3\" fill=\"#c0392b\"/>\n";
    }
  }
  svg += "</g>\n";

  if (spec.include_infinity) {
    svg += "<g id=\"infinity\" font-family=\"sans-serif\" font-size=\"12\">\n";
    try {
      auto idx = infinity::normalize(spec.sys);
      auto cls = infinity::classify_infinity(idx);
      for (const auto& eq : cls.equilibria) {
        auto ang = marker_angle(eq.name);
        if (!ang) continue;
        double theta = *ang * std::numbers::pi / 180.0;
        // y -> -y when the leading damping coefficient was normalized.
        if (idx.b_n_flipped) theta = -theta;
        const double ux = std::cos(theta), uy = std::sin(theta);
        const double mx = fr.center + fr.radius * ux, my = fr.center - fr.radius * uy;
        const double lx = fr.center + (fr.radius + 16.0) * ux, ly = fr.center - (fr.radius + 16.0) * uy;
        svg += "<circle class=\"equilibrium\" cx=\"" + fmt("%.3f", mx) + "\" cy=\"" + fmt("%.3f", my) +
               "\" r=\"4\" fill=\"#000000\"><title>" + xml_escape(eq.name + ": " + eq.type) +
               "</title></circle>\n";
        svg += "<text x=\"" + fmt("%.3f", lx) + "\" y=\"" + fmt("%.3f", ly + 4.0) +
               "\" text-anchor=\"middle\">" + xml_escape(eq.name) + "</text>\n";
      }
    } catch (const Error& e) {
      svg += "<text x=\"4\" y=\"14\">" + xml_escape(std::string("infinity: ") + e.what()) + "</text>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace lc::render

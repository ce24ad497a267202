#ifndef SWARMPLAN_SVG_HPP_
#define SWARMPLAN_SVG_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "swarmplan/environment.hpp"
#include "swarmplan/io.hpp"
#include "swarmplan/types.hpp"

namespace swarmplan {

struct PlotOptions {
  double icon_spacing = 1.0;  // one oriented icon per this much traveled path
  double canvas = 720.0;      // longest canvas side, px
};

namespace detail {

/// World-to-canvas mapping; flips y so the world's +y points up on screen.
struct SvgFrame {
  double scale = 1.0;
  double pad = 12.0;
  Bounds b;

  double x(double wx) const { return pad + (wx - b.xmin) * scale; }
  double y(double wy) const { return pad + (b.ymax - wy) * scale; }
  double w() const { return 2 * pad + (b.xmax - b.xmin) * scale; }
  double h() const { return 2 * pad + (b.ymax - b.ymin) * scale; }
};

inline std::string svg_num(double v) {
  // Fixed short form keeps files diff-able.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline const char* robot_color(int i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
                                  "#7f7f7f", "#bcbd22"};
  return palette[i % 10];
}

/// Small triangle pointing along `theta`.
inline std::string icon_at(const SvgFrame& f, const Vec2& p, double theta, const char* color) {
  const double len = 0.42, wid = 0.26;  // world units
  const Vec2 tip{p.x + len * std::cos(theta), p.y + len * std::sin(theta)};
  const Vec2 l{p.x - wid * std::sin(theta) * 0.5, p.y + wid * std::cos(theta) * 0.5};
  const Vec2 r{p.x + wid * std::sin(theta) * 0.5, p.y - wid * std::cos(theta) * 0.5};
  return "<polygon points=\"" + svg_num(f.x(tip.x)) + "," + svg_num(f.y(tip.y)) + " " +
         svg_num(f.x(l.x)) + "," + svg_num(f.y(l.y)) + " " + svg_num(f.x(r.x)) + "," +
         svg_num(f.y(r.y)) + "\" fill=\"" + color + "\" fill-opacity=\"0.85\"/>\n";
}

}  // namespace detail

/// Renders a planned run: workspace frame, obstacles, one polyline per robot,
/// oriented icons spaced by traveled path (their density shows how much
/// maneuvering each stretch cost), green circles on the starts, and red
/// crosses on the goals.
inline std::string render_svg(const Trajectory& traj, const Environment& env,
                              const std::vector<Vec2>& goals, const PlotOptions& opts = {}) {
  if (traj.samples.empty()) throw std::invalid_argument("cannot plot an empty trajectory");
  const int n = traj.front().size();

  detail::SvgFrame f;
  f.b = env.bounds;
  const double span = std::max(f.b.xmax - f.b.xmin, f.b.ymax - f.b.ymin);
  f.scale = (opts.canvas - 2 * f.pad) / span;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(f.w()) +
       "\" height=\"" + detail::svg_num(f.h()) + "\" viewBox=\"0 0 " + detail::svg_num(f.w()) +
       " " + detail::svg_num(f.h()) + "\">\n";
  s += "<rect x=\"" + detail::svg_num(f.x(f.b.xmin)) + "\" y=\"" + detail::svg_num(f.y(f.b.ymax)) +
       "\" width=\"" + detail::svg_num((f.b.xmax - f.b.xmin) * f.scale) + "\" height=\"" +
       detail::svg_num((f.b.ymax - f.b.ymin) * f.scale) +
       "\" fill=\"white\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";

  for (const Obstacle& ob : env.obstacles)
    s += "<circle cx=\"" + detail::svg_num(f.x(ob.center.x)) + "\" cy=\"" +
         detail::svg_num(f.y(ob.center.y)) + "\" r=\"" + detail::svg_num(ob.radius * f.scale) +
         "\" fill=\"#444444\"/>\n";

  // Per-robot polylines.
  for (int i = 0; i < n; ++i) {
    std::string pts;
    for (const SwarmState& st : traj.samples)
      pts += detail::svg_num(f.x(st.positions[i].x)) + "," +
             detail::svg_num(f.y(st.positions[i].y)) + " ";
    s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + detail::robot_color(i) +
         "\" stroke-width=\"1.2\" stroke-opacity=\"0.9\"/>\n";
  }

  // Oriented icons, one per icon_spacing of each robot's own traveled path;
  // a robot that never moves gets exactly one icon at its start.
  for (int i = 0; i < n; ++i) {
    double traveled = 0.0, next_mark = 0.0;
    Vec2 prev = traj.front().positions[i];
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
      const SwarmState& st = traj.samples[k];
      traveled += (st.positions[i] - prev).norm();
      prev = st.positions[i];
      if (traveled >= next_mark) {
        s += detail::icon_at(f, st.positions[i], st.orientations[i], detail::robot_color(i));
        next_mark = traveled + opts.icon_spacing;
      }
    }
  }

  // Start markers: green circles.
  for (int i = 0; i < n; ++i)
    s += "<circle cx=\"" + detail::svg_num(f.x(traj.front().positions[i].x)) + "\" cy=\"" +
         detail::svg_num(f.y(traj.front().positions[i].y)) +
         "\" r=\"5\" fill=\"none\" stroke=\"#0a8a0a\" stroke-width=\"2\"/>\n";

  // Goal markers: red crosses.
  const double arm = 5.0;
  for (const Vec2& g : goals) {
    const double cx = f.x(g.x), cy = f.y(g.y);
    s += "<path d=\"M " + detail::svg_num(cx - arm) + " " + detail::svg_num(cy - arm) + " L " +
         detail::svg_num(cx + arm) + " " + detail::svg_num(cy + arm) + " M " +
         detail::svg_num(cx - arm) + " " + detail::svg_num(cy + arm) + " L " +
         detail::svg_num(cx + arm) + " " + detail::svg_num(cy - arm) +
         "\" stroke=\"#cc1111\" stroke-width=\"2\" fill=\"none\"/>\n";
  }

  s += "</svg>\n";
  return s;
}

inline void emit_plot(const Trajectory& traj, const Environment& env,
                      const std::vector<Vec2>& goals, const std::string& path,
                      const PlotOptions& opts = {}) {
  detail::write_file(path, render_svg(traj, env, goals, opts));
}

}  // namespace swarmplan

#endif  // SWARMPLAN_SVG_HPP_

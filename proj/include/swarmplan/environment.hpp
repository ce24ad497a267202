#ifndef SWARMPLAN_ENVIRONMENT_HPP_
#define SWARMPLAN_ENVIRONMENT_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "swarmplan/types.hpp"

namespace swarmplan {

struct Obstacle {
  Vec2 center;
  double radius = 0.0;
};

/// Axis-aligned workspace rectangle; the boundary itself is allowed.
struct Bounds {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool contains(const Vec2& p, double margin) const {
    return p.x - margin >= xmin && p.x + margin <= xmax && p.y - margin >= ymin &&
           p.y + margin <= ymax;
  }
};

/// Workspace description. Robots are discs of `robot_radius` (0 for points)
/// that must stay inside the bounds and outside every obstacle disc; touching
/// either boundary exactly is allowed. `min_separation` optionally enforces a
/// pairwise distance between robot centers on top of the disc rule.
struct Environment {
  Bounds bounds;
  std::vector<Obstacle> obstacles;
  double robot_radius = 0.0;
  double min_separation = 0.0;

  void validate() const {
    if (!(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin))
      throw ValidationError("workspace bounds must have positive extent");
    if (robot_radius < 0.0) throw ValidationError("robot radius must be non-negative");
    if (min_separation < 0.0) throw ValidationError("minimum separation must be non-negative");
    for (std::size_t o = 0; o < obstacles.size(); ++o)
      if (!(obstacles[o].radius > 0.0))
        throw ValidationError("obstacle " + std::to_string(o + 1) +
                              " must have positive radius");
  }
};

struct CollisionReport {
  bool ok = true;
  std::string detail;  // empty when ok
};

/// Checks one swarm state against the workspace. The first violated rule is
/// reported with 1-based robot indices.
inline CollisionReport check_state(const SwarmState& state, const Environment& env) {
  const int n = state.size();
  const double rr = env.robot_radius;
  for (int i = 0; i < n; ++i) {
    const Vec2& p = state.positions[i];
    if (!env.bounds.contains(p, rr))
      return {false, "robot " + std::to_string(i + 1) + " leaves the workspace at (" +
                         std::to_string(p.x) + ", " + std::to_string(p.y) + ")"};
    for (std::size_t o = 0; o < env.obstacles.size(); ++o) {
      const Obstacle& obs = env.obstacles[o];
      const double dist = (p - obs.center).norm();
      if (dist < obs.radius + rr)
        return {false, "robot " + std::to_string(i + 1) + " penetrates obstacle " +
                           std::to_string(o + 1)};
    }
  }
  const double pair_min = std::max(2.0 * rr, env.min_separation);
  if (pair_min > 0.0) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double dist = (state.positions[a] - state.positions[b]).norm();
        if (dist < pair_min)
          return {false, "robots " + std::to_string(a + 1) + " and " +
                             std::to_string(b + 1) + " come within " +
                             std::to_string(dist)};
      }
  }
  return {};
}

/// Checks every sample of a trajectory, front to back.
inline CollisionReport check_trajectory(const Trajectory& traj, const Environment& env) {
  for (const SwarmState& s : traj.samples) {
    const CollisionReport rep = check_state(s, env);
    if (!rep.ok) return rep;
  }
  return {};
}

}  // namespace swarmplan

#endif  // SWARMPLAN_ENVIRONMENT_HPP_

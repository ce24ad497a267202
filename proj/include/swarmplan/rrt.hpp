#ifndef SWARMPLAN_RRT_HPP_
#define SWARMPLAN_RRT_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "swarmplan/allocation.hpp"
#include "swarmplan/environment.hpp"
#include "swarmplan/primitives.hpp"
#include "swarmplan/rng.hpp"
#include "swarmplan/scenario.hpp"
#include "swarmplan/simulate.hpp"

namespace swarmplan {

/// Tree-search planner flavor.
///  - kOriginal extends with raw group activations; headings drift wherever
///    the rotations take them.
///  - kWithRotation first aims up to three robots of the chosen group at the
///    sampled point, then translates the group, which buys far more progress
///    per node at the price of longer edge sequences.
enum class RrtMode { kOriginal, kWithRotation };

namespace detail {

struct RrtNode {
  SwarmState state;
  int parent = -1;          // index into the tree, -1 for the root
  ActivationSequence edge;  // steps applied at the parent to reach this node
};

inline double dist2_to(const SwarmState& s, const std::vector<Vec2>& pts) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) d2 += (s.positions[i] - pts[i]).squared_norm();
  return d2;
}

/// Simulates a candidate edge and validates every subsample against the
/// workspace in one pass, aborting at the first violation instead of
/// materializing a full trajectory. Accept/reject decision and final state
/// are identical to simulate(...) followed by check_trajectory(...).
inline bool simulate_check(const SwarmState& start, const ActivationSequence& seq,
                           const SwarmParams& params, double resolution,
                           const Environment& env, SwarmState* final_state) {
  if (!check_state(start, env).ok) return false;
  SwarmState cur = start;
  for (const ControlStep& c : seq) {
    const int interior =
        (c.arc > resolution) ? static_cast<int>(std::ceil(c.arc / resolution)) - 1 : 0;
    for (int k = 1; k <= interior; ++k) {
      const ControlStep part{c.mask, c.arc * (static_cast<double>(k) / (interior + 1))};
      if (!check_state(step(cur, part, params), env).ok) return false;
    }
    cur = step(cur, c, params);
    if (!check_state(cur, env).ok) return false;
  }
  *final_state = std::move(cur);
  return true;
}

/// Root-to-node activation sequence.
inline ActivationSequence chain_sequence(const std::vector<RrtNode>& nodes, int leaf) {
  std::vector<int> chain;
  for (int v = leaf; v >= 0; v = nodes[v].parent) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  ActivationSequence seq;
  for (int v : chain)
    seq.insert(seq.end(), nodes[v].edge.begin(), nodes[v].edge.end());
  return seq;
}

}  // namespace detail

/// Rapidly-exploring random tree over swarm configurations driven by the
/// shared control field. Nearest-neighbor distance and the success test look
/// at positions only; orientations ride along inside the node states.
inline PlanResult plan_rrt(const Scenario& sc, RrtMode mode, std::uint64_t seed) {
  sc.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const int n = sc.params.n;
  const GroupAllocation alloc = allocate_groups(n);
  Rng rng(seed);

  std::vector<detail::RrtNode> nodes;
  nodes.push_back(detail::RrtNode{sc.start, -1, {}});
  int goal_node = sc.at_goals(sc.start) ? 0 : -1;

  while (goal_node < 0) {
    if (static_cast<int>(nodes.size()) >= sc.planner.max_nodes || elapsed() > sc.planner.max_time_s)
      break;

    // Sample target positions: the goal set with goal-bias probability,
    // otherwise one uniform point per robot.
    std::vector<Vec2> target(n);
    if (rng.uniform() < sc.planner.goal_bias) {
      target = sc.goals;
    } else {
      for (int i = 0; i < n; ++i)
        target[i] = Vec2{rng.uniform(sc.env.bounds.xmin, sc.env.bounds.xmax),
                         rng.uniform(sc.env.bounds.ymin, sc.env.bounds.ymax)};
    }

    // Nearest tree node under the position-only metric; first index wins ties.
    int near = 0;
    double near_d2 = detail::dist2_to(nodes[0].state, target);
    for (int v = 1; v < static_cast<int>(nodes.size()); ++v) {
      const double d2 = detail::dist2_to(nodes[v].state, target);
      if (d2 < near_d2) {
        near = v;
        near_d2 = d2;
      }
    }
    const SwarmState& from = nodes[near].state;

    // Arc in (0, step_arc_max]: uniform() is [0,1), so flip it around.
    const double arc = (1.0 - rng.uniform()) * sc.planner.step_arc_max;

    if (mode == RrtMode::kOriginal) {
      // Try the sampled arc under every group and keep the collision-free
      // candidate that lands nearest the sample.
      int best_group = -1;
      double best_d2 = std::numeric_limits<double>::infinity();
      SwarmState best_state;
      for (int g = 0; g < alloc.m; ++g) {
        const ActivationSequence edge{ControlStep{alloc.rows[g], arc}};
        SwarmState landed;
        if (!detail::simulate_check(from, edge, sc.params, sc.planner.subsample_resolution,
                                    sc.env, &landed))
          continue;
        const double d2 = detail::dist2_to(landed, target);
        if (d2 < best_d2) {
          best_group = g;
          best_d2 = d2;
          best_state = std::move(landed);
        }
      }
      if (best_group < 0) continue;
      nodes.push_back(detail::RrtNode{
          best_state, near, ActivationSequence{ControlStep{alloc.rows[best_group], arc}}});
    } else {
      // Pick a translate group, aim up to three of its members at their
      // sampled points, then drive the group forward.
      const int g = rng.below(alloc.m - 1);
      const std::vector<int> members = alloc.group_members(g);
      std::vector<int> aimed = members;
      while (aimed.size() > 3) {
        // Deterministic partial shuffle: keep a random survivor set.
        aimed.erase(aimed.begin() + rng.below(static_cast<int>(aimed.size())));
      }
      std::vector<OrientationTarget> aims;
      for (int i : aimed) {
        const Vec2 d = target[i] - from.positions[i];
        aims.push_back({i, std::atan2(d.y, d.x)});
      }
      // Small swarms can have an empty translation group; its field is then a
      // plain everyone-rotates step with nobody to aim first.
      ActivationSequence edge;
      if (!aims.empty())
        edge = orientation_control_absolute(from, aims, alloc, sc.params, sc.planner.eps).sequence;
      edge.push_back(ControlStep{alloc.rows[g], arc});
      SwarmState landed;
      if (!detail::simulate_check(from, edge, sc.params, sc.planner.subsample_resolution,
                                  sc.env, &landed))
        continue;
      nodes.push_back(detail::RrtNode{std::move(landed), near, std::move(edge)});
    }

    if (sc.at_goals(nodes.back().state)) goal_node = static_cast<int>(nodes.size()) - 1;
  }

  PlanResult out;
  out.metrics.tree_nodes = static_cast<int>(nodes.size());
  if (goal_node >= 0) {
    out.status = PlanStatus::kSolved;
    out.sequence = detail::chain_sequence(nodes, goal_node);
    out.trajectory = simulate(sc.start, out.sequence, sc.params, sc.planner.subsample_resolution);
    out.metrics.path_length = path_length(out.sequence);
    out.metrics.execution_time = execution_time(out.sequence, sc.params);
  } else {
    // Budget exhausted: report the best partial, the branch ending nearest
    // the goals.
    out.status = PlanStatus::kTimeout;
    int best = 0;
    double best_d2 = detail::dist2_to(nodes[0].state, sc.goals);
    for (int v = 1; v < static_cast<int>(nodes.size()); ++v) {
      const double d2 = detail::dist2_to(nodes[v].state, sc.goals);
      if (d2 < best_d2) {
        best = v;
        best_d2 = d2;
      }
    }
    out.sequence = detail::chain_sequence(nodes, best);
    out.trajectory = simulate(sc.start, out.sequence, sc.params, sc.planner.subsample_resolution);
    out.metrics.path_length = path_length(out.sequence);
    out.metrics.execution_time = execution_time(out.sequence, sc.params);
  }
  out.metrics.runtime_s = elapsed();
  return out;
}

}  // namespace swarmplan

#endif  // SWARMPLAN_RRT_HPP_

#ifndef SWARMPLAN_PLANNERS_HPP_
#define SWARMPLAN_PLANNERS_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "swarmplan/allocation.hpp"
#include "swarmplan/environment.hpp"
#include "swarmplan/primitives.hpp"
#include "swarmplan/rng.hpp"
#include "swarmplan/rrt.hpp"
#include "swarmplan/scenario.hpp"
#include "swarmplan/simulate.hpp"

namespace swarmplan {

namespace detail {

/// Factor by which the doubling construction amplifies the isolated robot's
/// displacement: one doubling per pair of group mates that must be cancelled.
inline double isolation_gain(const GroupAllocation& alloc, int k) {
  const int mates = popcount_mask(alloc.rows[isolation_group(alloc, k)]) - 1;
  return std::ldexp(1.0, (mates + 1) / 2);
}

/// Point-robot collision test used by the per-robot planner: the disc of
/// robot_radius around p must clear the workspace edge, every inflated
/// obstacle, and every frozen robot disc.
inline bool point_clear(const Vec2& p, const Environment& env,
                        const std::vector<Vec2>& frozen) {
  if (!env.bounds.contains(p, env.robot_radius)) return false;
  for (const Obstacle& ob : env.obstacles)
    if ((p - ob.center).norm() < ob.radius + env.robot_radius) return false;
  double clearance = 2.0 * env.robot_radius;
  if (env.min_separation > 0.0) clearance = std::max(clearance, env.min_separation);
  for (const Vec2& q : frozen)
    if ((p - q).norm() < clearance) return false;
  return true;
}

inline bool segment_clear(const Vec2& a, const Vec2& b, const Environment& env,
                          const std::vector<Vec2>& frozen, double resolution) {
  const double len = (b - a).norm();
  const int pieces = std::max(1, static_cast<int>(std::ceil(len / resolution)));
  for (int i = 1; i <= pieces; ++i) {
    const double t = static_cast<double>(i) / pieces;
    if (!point_clear(a + (b - a) * t, env, frozen)) return false;
  }
  return true;
}

/// Optimistic prefilter for a subgroup maneuver edge: every member sweeps its
/// straight push segment, so a blocked segment dooms the full simulation. The
/// converse does not hold (transient excursions are ignored), so accepted
/// candidates still get the complete end-to-end check.
inline bool push_segments_clear(const SwarmState& from, const std::vector<int>& subgroup,
                                double arc, const std::vector<double>& headings,
                                const Environment& env, double resolution) {
  static const std::vector<Vec2> kNoFrozen;
  for (std::size_t s = 0; s < subgroup.size(); ++s) {
    const Vec2 a = from.positions[subgroup[s]];
    const Vec2 b{a.x + arc * std::cos(headings[s]), a.y + arc * std::sin(headings[s])};
    if (!segment_clear(a, b, env, kNoFrozen, resolution)) return false;
  }
  return true;
}

/// Shared tail for tree planners: assemble metrics and, on exhausted budget,
/// the branch ending nearest the goals.
inline void finish_tree_result(PlanResult& out, const Scenario& sc,
                               const std::vector<RrtNode>& nodes, int goal_node) {
  if (goal_node >= 0) {
    out.status = PlanStatus::kSolved;
    out.sequence = chain_sequence(nodes, goal_node);
  } else {
    out.status = PlanStatus::kTimeout;
    int best = 0;
    double best_d2 = dist2_to(nodes[0].state, sc.goals);
    for (int v = 1; v < static_cast<int>(nodes.size()); ++v) {
      const double d2 = dist2_to(nodes[v].state, sc.goals);
      if (d2 < best_d2) {
        best = v;
        best_d2 = d2;
      }
    }
    out.sequence = chain_sequence(nodes, best);
  }
  out.trajectory = simulate(sc.start, out.sequence, sc.params, sc.planner.subsample_resolution);
  out.metrics.path_length = path_length(out.sequence);
  out.metrics.execution_time = execution_time(out.sequence, sc.params);
}

/// Validates that the configured subgroups are disjoint and compiles one
/// primitive per subgroup. Robots outside every subgroup are legal; they are
/// simply never moved, so they only make sense where their goals equal their
/// starts.
inline std::vector<Primitive> compile_cover(const Scenario& sc, const GroupAllocation& alloc) {
  const std::vector<std::vector<int>>& cover = sc.planner.subgroups;
  if (cover.empty())
    throw ValidationError("subgroup planners need at least one subgroup configured");
  std::vector<int> seen(sc.params.n, 0);
  for (const std::vector<int>& sg : cover)
    for (int j : sg) {
      if (j < 0 || j >= sc.params.n)
        throw ValidationError("subgroup robot " + std::to_string(j + 1) + " out of range");
      if (seen[j]++)
        throw ValidationError("robot " + std::to_string(j + 1) +
                              " appears in more than one subgroup");
    }
  PrimitiveOptions opts;
  opts.eps = sc.planner.eps;
  std::vector<Primitive> prims;
  prims.reserve(cover.size());
  for (const std::vector<int>& sg : cover)
    prims.push_back(compile_primitive(sg, alloc, sc.params, opts));
  return prims;
}

/// Ascending union of the subgroups.
inline std::vector<int> covered_robots(const std::vector<Primitive>& prims) {
  std::vector<int> out;
  for (const Primitive& p : prims) out.insert(out.end(), p.subgroup.begin(), p.subgroup.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Plans each robot separately: a 2D tree search through the robot's own
/// position space with everyone else frozen in place as disc obstacles, and
/// every tree edge realized by the doubling maneuver that moves only that
/// robot. The maneuver makes the mover's group mates swing out and back by up
/// to half the edge length, so the cheap disc test only prunes; every
/// accepted edge is a full-swarm simulation checked end to end. Robots are
/// processed in index order, each seeing the previous movers already parked
/// at their goals.
inline PlanResult plan_pure_control(const Scenario& sc, std::uint64_t seed) {
  sc.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const int n = sc.params.n;
  const GroupAllocation alloc = allocate_groups(n);
  Rng rng(seed);

  PlanResult out;
  SwarmState cur = sc.start;
  int total_nodes = 0;
  bool exhausted = false;

  for (int k = 0; k < n && !exhausted; ++k) {
    std::vector<Vec2> frozen;
    for (int j = 0; j < n; ++j)
      if (j != k) frozen.push_back(cur.positions[j]);

    std::vector<detail::RrtNode> tree{detail::RrtNode{cur, -1, {}}};
    ++total_nodes;
    int reached = (cur.positions[k] - sc.goals[k]).norm() <= sc.goal_radius ? 0 : -1;

    while (reached < 0) {
      if (total_nodes >= sc.planner.max_nodes || elapsed() > sc.planner.max_time_s) {
        exhausted = true;
        break;
      }
      Vec2 target;
      if (rng.uniform() < sc.planner.goal_bias)
        target = sc.goals[k];
      else
        target = Vec2{rng.uniform(sc.env.bounds.xmin, sc.env.bounds.xmax),
                      rng.uniform(sc.env.bounds.ymin, sc.env.bounds.ymax)};
      int near = 0;
      double near_d2 = (tree[0].state.positions[k] - target).squared_norm();
      for (int v = 1; v < static_cast<int>(tree.size()); ++v) {
        const double d2 = (tree[v].state.positions[k] - target).squared_norm();
        if (d2 < near_d2) {
          near = v;
          near_d2 = d2;
        }
      }
      const SwarmState& from = tree[near].state;
      const Vec2 at = from.positions[k];
      const double dist = std::sqrt(near_d2);
      if (dist <= kArcDropTol) continue;
      const double hop = std::min(dist, (1.0 - rng.uniform()) * sc.planner.step_arc_max);
      const Vec2 next = at + (target - at) * (hop / dist);
      if (!detail::segment_clear(at, next, sc.env, frozen, sc.planner.subsample_resolution))
        continue;
      const Vec2 d = next - at;
      const ActivationSequence edge =
          isolate_translate(from, k, hop / detail::isolation_gain(alloc, k),
                            std::atan2(d.y, d.x), alloc, sc.params, sc.planner.eps);
      SwarmState landed;
      if (!detail::simulate_check(from, edge, sc.params, sc.planner.subsample_resolution,
                                  sc.env, &landed))
        continue;
      tree.push_back(detail::RrtNode{std::move(landed), near, edge});
      ++total_nodes;
      if ((tree.back().state.positions[k] - sc.goals[k]).norm() <= sc.goal_radius)
        reached = static_cast<int>(tree.size()) - 1;
    }

    // Keep the branch that got robot k closest even when the budget ran out,
    // so a timeout still reports its best partial.
    int leaf = reached;
    if (leaf < 0) {
      leaf = 0;
      double best_d2 = (tree[0].state.positions[k] - sc.goals[k]).squared_norm();
      for (int v = 1; v < static_cast<int>(tree.size()); ++v) {
        const double d2 = (tree[v].state.positions[k] - sc.goals[k]).squared_norm();
        if (d2 < best_d2) {
          leaf = v;
          best_d2 = d2;
        }
      }
    }
    const ActivationSequence part = detail::chain_sequence(tree, leaf);
    out.sequence.insert(out.sequence.end(), part.begin(), part.end());
    cur = tree[leaf].state;
    if (reached < 0) exhausted = true;
  }

  out.metrics.tree_nodes = total_nodes;
  out.trajectory = simulate(sc.start, out.sequence, sc.params, sc.planner.subsample_resolution);
  out.metrics.path_length = path_length(out.sequence);
  out.metrics.execution_time = execution_time(out.sequence, sc.params);
  out.metrics.runtime_s = elapsed();
  out.status =
      (!exhausted && sc.at_goals(cur)) ? PlanStatus::kSolved : PlanStatus::kTimeout;
  return out;
}

/// One tree over the combined position space of all subgroups: each extension
/// samples a whole-swarm target, picks a subgroup, and displaces it with its
/// compiled maneuver, so the subgroups interleave their progress.
inline PlanResult plan_subgroup_parallel(const Scenario& sc, std::uint64_t seed) {
  sc.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const int n = sc.params.n;
  const GroupAllocation alloc = allocate_groups(n);
  const std::vector<Primitive> prims = detail::compile_cover(sc, alloc);
  const std::vector<int> covered = detail::covered_robots(prims);
  Rng rng(seed);

  std::vector<detail::RrtNode> nodes{detail::RrtNode{sc.start, -1, {}}};
  int goal_node = sc.at_goals(sc.start) ? 0 : -1;

  while (goal_node < 0) {
    if (static_cast<int>(nodes.size()) >= sc.planner.max_nodes || elapsed() > sc.planner.max_time_s)
      break;

    // Target positions for the covered robots; the rest cannot be moved.
    std::vector<Vec2> target(n);
    if (rng.uniform() < sc.planner.goal_bias) {
      for (int i : covered) target[i] = sc.goals[i];
    } else {
      for (int i : covered)
        target[i] = Vec2{rng.uniform(sc.env.bounds.xmin, sc.env.bounds.xmax),
                         rng.uniform(sc.env.bounds.ymin, sc.env.bounds.ymax)};
    }
    auto covered_d2 = [&](const SwarmState& s) {
      double d2 = 0.0;
      for (int i : covered) d2 += (s.positions[i] - target[i]).squared_norm();
      return d2;
    };
    int near = 0;
    double near_d2 = covered_d2(nodes[0].state);
    for (int v = 1; v < static_cast<int>(nodes.size()); ++v) {
      const double d2 = covered_d2(nodes[v].state);
      if (d2 < near_d2) {
        near = v;
        near_d2 = d2;
      }
    }
    const SwarmState& from = nodes[near].state;

    // The sample itself decides the interleaving: extend the subgroup it
    // pulls hardest, i.e. the one farthest from its sampled member targets.
    // A lone subgroup is always extended, which keeps the one-subgroup case
    // coincident with the sequential planner.
    std::size_t pick = 0;
    double pick_d2 = -1.0;
    for (std::size_t p = 0; p < prims.size(); ++p) {
      double d2 = 0.0;
      for (int i : prims[p].subgroup) d2 += (target[i] - from.positions[i]).squared_norm();
      if (d2 > pick_d2) {
        pick_d2 = d2;
        pick = p;
      }
    }
    const Primitive& prim = prims[pick];
    const double arc = (1.0 - rng.uniform()) * sc.planner.step_arc_max;
    std::vector<double> headings;
    for (int i : prim.subgroup) {
      const Vec2 d = target[i] - from.positions[i];
      headings.push_back(std::atan2(d.y, d.x));
    }
    if (!detail::push_segments_clear(from, prim.subgroup, arc, headings, sc.env,
                                     sc.planner.subsample_resolution))
      continue;
    const ActivationSequence edge = prim.compile(from, arc, headings);
    SwarmState landed;
    if (!detail::simulate_check(from, edge, sc.params, sc.planner.subsample_resolution, sc.env,
                                &landed))
      continue;
    nodes.push_back(detail::RrtNode{std::move(landed), near, edge});
    if (sc.at_goals(nodes.back().state)) goal_node = static_cast<int>(nodes.size()) - 1;
  }

  PlanResult out;
  out.metrics.tree_nodes = static_cast<int>(nodes.size());
  detail::finish_tree_result(out, sc, nodes, goal_node);
  out.metrics.runtime_s = elapsed();
  return out;
}

/// Plans one subgroup at a time in configuration order, everyone else parked
/// at their current poses; per-subgroup plans are concatenated. Lower tree
/// dimension buys speed; later subgroups route around earlier arrivals.
inline PlanResult plan_subgroup_sequential(const Scenario& sc, std::uint64_t seed) {
  sc.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const GroupAllocation alloc = allocate_groups(sc.params.n);
  const std::vector<Primitive> prims = detail::compile_cover(sc, alloc);
  Rng rng(seed);

  PlanResult out;
  SwarmState cur = sc.start;
  int total_nodes = 0;
  bool solved_all = true;

  for (const Primitive& prim : prims) {
    auto subgroup_done = [&](const SwarmState& s) {
      for (int i : prim.subgroup)
        if ((s.positions[i] - sc.goals[i]).norm() > sc.goal_radius) return false;
      return true;
    };

    std::vector<detail::RrtNode> nodes{detail::RrtNode{cur, -1, {}}};
    ++total_nodes;
    int goal_node = subgroup_done(cur) ? 0 : -1;

    while (goal_node < 0) {
      if (total_nodes >= sc.planner.max_nodes || elapsed() > sc.planner.max_time_s) break;

      // Targets for this subgroup's members only.
      std::vector<Vec2> target(prim.subgroup.size());
      const bool biased = rng.uniform() < sc.planner.goal_bias;
      for (std::size_t s = 0; s < prim.subgroup.size(); ++s) {
        if (biased)
          target[s] = sc.goals[prim.subgroup[s]];
        else
          target[s] = Vec2{rng.uniform(sc.env.bounds.xmin, sc.env.bounds.xmax),
                           rng.uniform(sc.env.bounds.ymin, sc.env.bounds.ymax)};
      }
      auto sub_d2 = [&](const SwarmState& s) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < prim.subgroup.size(); ++i)
          d2 += (s.positions[prim.subgroup[i]] - target[i]).squared_norm();
        return d2;
      };
      int near = 0;
      double near_d2 = sub_d2(nodes[0].state);
      for (int v = 1; v < static_cast<int>(nodes.size()); ++v) {
        const double d2 = sub_d2(nodes[v].state);
        if (d2 < near_d2) {
          near = v;
          near_d2 = d2;
        }
      }
      const SwarmState& from = nodes[near].state;

      const double arc = (1.0 - rng.uniform()) * sc.planner.step_arc_max;
      std::vector<double> headings;
      for (std::size_t s = 0; s < prim.subgroup.size(); ++s) {
        const Vec2 d = target[s] - from.positions[prim.subgroup[s]];
        headings.push_back(std::atan2(d.y, d.x));
      }
      if (!detail::push_segments_clear(from, prim.subgroup, arc, headings, sc.env,
                                       sc.planner.subsample_resolution))
        continue;
      const ActivationSequence edge = prim.compile(from, arc, headings);
      const Trajectory traj = simulate(from, edge, sc.params, sc.planner.subsample_resolution);
      if (!check_trajectory(traj, sc.env).ok) continue;
      nodes.push_back(detail::RrtNode{traj.back(), near, edge});
      ++total_nodes;
      if (subgroup_done(nodes.back().state)) goal_node = static_cast<int>(nodes.size()) - 1;
    }

    // On exhaustion keep the branch that got this subgroup closest.
    int leaf = goal_node;
    if (leaf < 0) {
      solved_all = false;
      leaf = 0;
      std::vector<Vec2> want(prim.subgroup.size());
      for (std::size_t s = 0; s < prim.subgroup.size(); ++s)
        want[s] = sc.goals[prim.subgroup[s]];
      auto goal_d2 = [&](const SwarmState& s) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < prim.subgroup.size(); ++i)
          d2 += (s.positions[prim.subgroup[i]] - want[i]).squared_norm();
        return d2;
      };
      double best_d2 = goal_d2(nodes[0].state);
      for (int v = 1; v < static_cast<int>(nodes.size()); ++v) {
        const double d2 = goal_d2(nodes[v].state);
        if (d2 < best_d2) {
          leaf = v;
          best_d2 = d2;
        }
      }
    }
    const ActivationSequence part = detail::chain_sequence(nodes, leaf);
    out.sequence.insert(out.sequence.end(), part.begin(), part.end());
    cur = nodes[leaf].state;
    if (!solved_all) break;
  }

  out.metrics.tree_nodes = total_nodes;
  out.trajectory = simulate(sc.start, out.sequence, sc.params, sc.planner.subsample_resolution);
  out.metrics.path_length = path_length(out.sequence);
  out.metrics.execution_time = execution_time(out.sequence, sc.params);
  out.metrics.runtime_s = elapsed();
  out.status = (solved_all && sc.at_goals(cur)) ? PlanStatus::kSolved : PlanStatus::kTimeout;
  return out;
}

}  // namespace swarmplan

#endif  // SWARMPLAN_PLANNERS_HPP_

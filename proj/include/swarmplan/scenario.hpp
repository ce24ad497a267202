#ifndef SWARMPLAN_SCENARIO_HPP_
#define SWARMPLAN_SCENARIO_HPP_

#include <string>
#include <vector>

#include "swarmplan/environment.hpp"
#include "swarmplan/types.hpp"

namespace swarmplan {

/// Knobs shared by the planners. Defaults reproduce the benchmark settings;
/// individual planners read only the fields that concern them.
struct PlannerConfig {
  int schedule_length = 35;   // activation stages per optimization attempt
  int restarts = 10;          // optimization restarts before giving up
  double step_arc_max = 2.0;  // largest sampled extension arc
  double goal_bias = 0.1;     // probability of steering at the goal
  int max_nodes = 20000;      // tree-size budget
  double max_time_s = 300.0;  // wall-clock budget
  double eps = 0.5;           // excursion bound for orientation composites
  double subsample_resolution = 0.5;  // collision-check sample spacing
  std::vector<std::vector<int>> subgroups;  // 0-based robot ids per subgroup

  void validate(int n) const {
    if (schedule_length < 1) throw ValidationError("schedule length must be positive");
    if (restarts < 1) throw ValidationError("restart count must be positive");
    if (!(step_arc_max > 0.0)) throw ValidationError("extension arc cap must be positive");
    if (goal_bias < 0.0 || goal_bias > 1.0)
      throw ValidationError("goal bias must lie in [0, 1]");
    if (max_nodes < 1) throw ValidationError("node budget must be positive");
    if (!(max_time_s > 0.0)) throw ValidationError("time budget must be positive");
    if (!(eps > 0.0)) throw ValidationError("excursion bound must be positive");
    if (!(subsample_resolution > 0.0))
      throw ValidationError("subsample resolution must be positive");
    for (const std::vector<int>& sg : subgroups) {
      if (sg.empty()) throw ValidationError("subgroups must not be empty");
      for (int j : sg)
        if (j < 0 || j >= n)
          throw ValidationError("subgroup robot " + std::to_string(j + 1) +
                                " out of range");
    }
  }
};

/// A complete planning problem: swarm, workspace, start state, and per-robot
/// goal discs.
struct Scenario {
  SwarmParams params;
  SwarmState start;
  std::vector<Vec2> goals;
  double goal_radius = 0.0;
  Environment env;
  PlannerConfig planner;

  void validate() const {
    params.validate();
    start.validate();
    if (start.size() != params.n)
      throw ValidationError("start state must describe exactly " + std::to_string(params.n) +
                            " robots");
    env.validate();
    planner.validate(params.n);
    if (static_cast<int>(goals.size()) != params.n)
      throw ValidationError("exactly one goal per robot required");
    if (!(goal_radius > 0.0)) throw ValidationError("goal radius must be positive");
    const CollisionReport rep = check_state(start, env);
    if (!rep.ok) throw ValidationError("start state is invalid: " + rep.detail);
    for (int i = 0; i < params.n; ++i) {
      if (!env.bounds.contains(goals[i], env.robot_radius))
        throw ValidationError("goal of robot " + std::to_string(i + 1) +
                              " leaves the workspace");
      for (std::size_t o = 0; o < env.obstacles.size(); ++o)
        if ((goals[i] - env.obstacles[o].center).norm() <
            env.obstacles[o].radius + env.robot_radius)
          throw ValidationError("goal of robot " + std::to_string(i + 1) +
                                " sits inside obstacle " + std::to_string(o + 1));
    }
  }

  bool at_goals(const SwarmState& state) const {
    for (int i = 0; i < params.n; ++i)
      if ((state.positions[i] - goals[i]).norm() > goal_radius) return false;
    return true;
  }
};

enum class PlanStatus { kSolved, kTimeout, kInfeasible };

inline const char* to_string(PlanStatus s) {
  switch (s) {
    case PlanStatus::kSolved: return "solved";
    case PlanStatus::kTimeout: return "timeout";
    case PlanStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

struct PlanMetrics {
  double runtime_s = 0.0;
  int tree_nodes = 0;  // 0 for planners that grow no tree
  double path_length = 0.0;
  double execution_time = 0.0;
};

struct PlanResult {
  PlanStatus status = PlanStatus::kInfeasible;
  ActivationSequence sequence;
  Trajectory trajectory;
  PlanMetrics metrics;
  // Smallest constraint violation seen by optimization-based planners; zero
  // for solved results and planners without a residual notion.
  double best_residual = 0.0;
};

}  // namespace swarmplan

#endif  // SWARMPLAN_SCENARIO_HPP_

#ifndef SWARMPLAN_VERIFY_HPP_
#define SWARMPLAN_VERIFY_HPP_

#include <string>

#include "swarmplan/environment.hpp"
#include "swarmplan/scenario.hpp"
#include "swarmplan/simulate.hpp"

namespace swarmplan {

struct VerifyReport {
  bool ok = true;
  std::string detail;  // empty when ok
};

/// Replays an activation sequence from the scenario start and confirms that
/// the final state reaches every goal disc and that no trajectory sample
/// violates the workspace. Independent of how the sequence was produced.
inline VerifyReport verify_plan(const Scenario& scenario, const ActivationSequence& seq) {
  for (std::size_t s = 0; s < seq.size(); ++s)
    if (seq[s].arc < 0.0)
      return {false, "step " + std::to_string(s + 1) + " has a negative arc"};
  const Trajectory traj =
      simulate(scenario.start, seq, scenario.params, scenario.planner.subsample_resolution);
  const CollisionReport rep = check_trajectory(traj, scenario.env);
  if (!rep.ok) return {false, rep.detail};
  const SwarmState& fin = traj.back();
  for (int i = 0; i < scenario.params.n; ++i) {
    const double miss = (fin.positions[i] - scenario.goals[i]).norm();
    if (miss > scenario.goal_radius)
      return {false, "robot " + std::to_string(i + 1) + " stops " + std::to_string(miss) +
                         " from its goal (allowed " + std::to_string(scenario.goal_radius) +
                         ")"};
  }
  return {};
}

}  // namespace swarmplan

#endif  // SWARMPLAN_VERIFY_HPP_

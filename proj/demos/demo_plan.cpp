// Loads a scenario, plans it with the rotation-augmented sampling planner,
// independently re-verifies the result, and renders the trajectory to SVG.
//
// Usage: demo_plan <scenario-file> [seed]

#include <cstdio>
#include <cstdlib>

#include "swarmplan/rrt.hpp"
#include "swarmplan/io.hpp"
#include "swarmplan/svg.hpp"
#include "swarmplan/verify.hpp"

int main(int argc, char** argv) {
  using namespace swarmplan;

  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <scenario-file> [seed]\n", argv[0]);
    return 4;
  }
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

  const Scenario sc = load_scenario(argv[1]);
  const PlanResult res = plan_rrt(sc, RrtMode::kWithRotation, seed);

  std::printf("status=%s runtime_s=%.3f tree_nodes=%d path_length=%.3f execution_time=%.3f\n",
              to_string(res.status), res.metrics.runtime_s, res.metrics.tree_nodes,
              res.metrics.path_length, res.metrics.execution_time);

  if (res.status != PlanStatus::kSolved) return res.status == PlanStatus::kTimeout ? 2 : 3;

  const VerifyReport rep = verify_plan(sc, res.sequence);
  std::printf("verify: %s\n", rep.ok ? "ok" : rep.detail.c_str());

  emit_plot(res.trajectory, sc.env, sc.goals, "demo_plan.svg");
  std::printf("wrote demo_plan.svg\n");
  return rep.ok ? 0 : 3;
}

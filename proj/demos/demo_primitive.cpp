// Compiles a maneuver that translates robots 4 and 5 (1-based) of a 6-robot
// swarm by one unit while every other robot returns exactly to where it was,
// then replays it and prints the per-robot displacements.

#include <cstdio>

#include "swarmplan/allocation.hpp"
#include "swarmplan/io.hpp"
#include "swarmplan/primitives.hpp"
#include "swarmplan/simulate.hpp"

int main() {
  using namespace swarmplan;

  SwarmParams params;
  params.n = 6;
  const GroupAllocation alloc = allocate_groups(params.n);

  const std::vector<int> subgroup = {3, 4};  // robots 4 and 5 in file convention
  const Primitive prim = compile_primitive(subgroup, alloc, params);
  std::printf("%s\n", format_primitive_line(prim.subgroup, prim.expr, prim.order).c_str());

  SwarmState state;
  for (int i = 0; i < params.n; ++i) {
    state.positions.push_back(Vec2{0.0, 3.0 * i});
    state.orientations.push_back(0.0);
  }

  const std::vector<double> headings(subgroup.size(), 0.0);  // push along +x
  const ActivationSequence seq = prim.compile(state, 1.0, headings);
  const SwarmState after = run_sequence(state, seq, params);

  std::printf("steps=%zu execution_time=%.3f\n", seq.size(), execution_time(seq, params));
  for (int i = 0; i < params.n; ++i) {
    const Vec2 delta = after.positions[i] - state.positions[i];
    std::printf("robot %d moved (%+.6f, %+.6f)\n", i + 1, delta.x, delta.y);
  }
  return 0;
}

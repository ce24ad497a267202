#ifndef SWARMPLAN_SIMULATE_HPP_
#define SWARMPLAN_SIMULATE_HPP_

#include <cmath>
#include <stdexcept>

#include "swarmplan/angles.hpp"
#include "swarmplan/types.hpp"

namespace swarmplan {

/// Default arc-length spacing between intra-step trajectory samples.
inline constexpr double kDefaultSubsampleRes = 0.5;

/// Applies one global control step in closed form: active robots translate
/// `arc` along their heading, inactive robots rotate in place by arc / r_i.
inline SwarmState step(const SwarmState& s, const ControlStep& c, const SwarmParams& params) {
  if (c.arc < 0.0) throw std::invalid_argument("control arcs must be nonnegative");
  SwarmState out = s;
  for (int i = 0; i < out.size(); ++i) {
    if (c.active(i)) {
      const Vec2 h = heading_vec(out.orientations[i]);
      out.positions[i].x += c.arc * h.x;
      out.positions[i].y += c.arc * h.y;
    } else {
      out.orientations[i] = wrap_angle(out.orientations[i] + c.arc / params.radius_of(i));
    }
  }
  return out;
}

/// Runs a sequence and records the sampled trajectory. Each step contributes
/// interior samples every `resolution` units of arc plus its end state; the
/// first sample is the initial state.
inline Trajectory simulate(const SwarmState& start, const ActivationSequence& seq,
                           const SwarmParams& params,
                           double resolution = kDefaultSubsampleRes) {
  if (!(resolution > 0.0)) throw std::invalid_argument("subsample resolution must be positive");
  start.validate();
  if (start.size() != params.n)
    throw std::invalid_argument("state size does not match swarm parameters");
  Trajectory traj;
  traj.samples.push_back(start);
  SwarmState cur = start;
  for (const ControlStep& c : seq) {
    if (c.arc < 0.0) throw std::invalid_argument("control arcs must be nonnegative");
    const int interior = (c.arc > resolution)
                             ? static_cast<int>(std::ceil(c.arc / resolution)) - 1
                             : 0;
    for (int k = 1; k <= interior; ++k) {
      ControlStep part{c.mask, c.arc * (static_cast<double>(k) / (interior + 1))};
      traj.samples.push_back(step(cur, part, params));
    }
    cur = step(cur, c, params);
    traj.samples.push_back(cur);
  }
  return traj;
}

/// Final state only; bit-identical to simulate(...).back() because both fold
/// the same step() calls.
inline SwarmState run_sequence(const SwarmState& start, const ActivationSequence& seq,
                               const SwarmParams& params) {
  SwarmState cur = start;
  for (const ControlStep& c : seq) cur = step(cur, c, params);
  return cur;
}

/// Total Cartesian arc length traced by robot pivots. In-place rotations
/// contribute zero, so this equals the sum over steps of arc * active count.
inline double path_length(const Trajectory& traj) {
  double total = 0.0;
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const SwarmState& a = traj.samples[k - 1];
    const SwarmState& b = traj.samples[k];
    for (std::size_t i = 0; i < a.positions.size(); ++i)
      total += (b.positions[i] - a.positions[i]).norm();
  }
  return total;
}

/// Algebraic route to the same quantity, straight from the sequence.
inline double path_length(const ActivationSequence& seq) {
  double total = 0.0;
  for (const ControlStep& c : seq) total += c.arc * popcount_mask(c.mask);
  return total;
}

/// Wall time the swarm needs to execute the sequence at the nominal field
/// speed; every step costs arc / u regardless of how many robots translate.
inline double execution_time(const ActivationSequence& seq, const SwarmParams& params) {
  double total = 0.0;
  for (const ControlStep& c : seq) total += c.arc / params.u_nominal;
  return total;
}

/// Net orientation change each robot accrues over a sequence, in radians
/// before wrapping. Depends only on the sequence, never on the state.
inline std::vector<double> net_rotation(const ActivationSequence& seq, const SwarmParams& params) {
  std::vector<double> delta(static_cast<std::size_t>(params.n), 0.0);
  for (const ControlStep& c : seq)
    for (int i = 0; i < params.n; ++i)
      if (!c.active(i)) delta[static_cast<std::size_t>(i)] += c.arc / params.radius_of(i);
  return delta;
}

}  // namespace swarmplan

#endif  // SWARMPLAN_SIMULATE_HPP_

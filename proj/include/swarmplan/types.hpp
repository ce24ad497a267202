#ifndef SWARMPLAN_TYPES_HPP_
#define SWARMPLAN_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmplan/angles.hpp"

namespace swarmplan {

/// Robots are indexed 0-based throughout the C++ API. Textual surfaces
/// (files, CLI, bracket strings, error messages) use 1-based labels.

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::sqrt(x * x + y * y); }
  double squared_norm() const { return x * x + y * y; }
};

inline Vec2 heading_vec(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Physical parameters shared by the whole swarm. Robot i turns at rate
/// 1/r_i radians per unit of arc while inactive; r_overrides, when non-empty,
/// gives per-robot turning radii (size n) and takes precedence over r.
struct SwarmParams {
  int n = 0;
  double r = 1.0;
  double u_nominal = 1.0;
  std::vector<double> r_overrides;

  double radius_of(int robot) const {
    return r_overrides.empty() ? r : r_overrides[static_cast<std::size_t>(robot)];
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("swarm size must be >= 1, got " + std::to_string(n));
    if (n > 64) throw std::invalid_argument("swarm size must be <= 64, got " + std::to_string(n));
    if (!(r > 0.0)) throw std::invalid_argument("turning radius must be positive");
    if (!(u_nominal > 0.0)) throw std::invalid_argument("nominal speed must be positive");
    if (!r_overrides.empty() && static_cast<int>(r_overrides.size()) != n)
      throw std::invalid_argument("r_overrides size must equal swarm size");
    for (double ri : r_overrides)
      if (!(ri > 0.0)) throw std::invalid_argument("turning radii must be positive");
  }
};

/// One global control step: robots whose mask bit is set translate by `arc`
/// along their heading; the rest rotate in place by arc / r_i. Arcs are
/// nonnegative (the field is unilateral).
struct ControlStep {
  std::uint64_t mask = 0;
  double arc = 0.0;

  bool active(int robot) const { return (mask >> robot) & 1u; }
};

inline std::uint64_t mask_of(const std::vector<int>& robots) {
  std::uint64_t m = 0;
  for (int r : robots) m |= (std::uint64_t{1} << r);
  return m;
}

inline int popcount_mask(std::uint64_t m) {
  int c = 0;
  while (m) {
    m &= m - 1;
    ++c;
  }
  return c;
}

using ActivationSequence = std::vector<ControlStep>;

/// Appends `tail` to `head` in place.
inline void append_sequence(ActivationSequence& head, const ActivationSequence& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
}

/// Full swarm configuration. Orientations are kept normalized to [0, 2*pi).
struct SwarmState {
  std::vector<Vec2> positions;
  std::vector<double> orientations;

  int size() const { return static_cast<int>(positions.size()); }

  void validate() const {
    if (positions.size() != orientations.size())
      throw std::invalid_argument("state position/orientation lengths differ");
    if (positions.empty()) throw std::invalid_argument("state must hold at least one robot");
  }

  bool operator==(const SwarmState& o) const {
    return positions.size() == o.positions.size() &&
           [&] {
             for (std::size_t i = 0; i < positions.size(); ++i) {
               if (positions[i].x != o.positions[i].x || positions[i].y != o.positions[i].y ||
                   orientations[i] != o.orientations[i])
                 return false;
             }
             return true;
           }();
  }
};

/// Time-ordered state samples: the state before the first step, subsamples
/// inside each step at a fixed arc resolution, and the state after each step.
struct Trajectory {
  std::vector<SwarmState> samples;

  const SwarmState& front() const { return samples.front(); }
  const SwarmState& back() const { return samples.back(); }
};

struct RankDeficientError : std::runtime_error {
  std::vector<int> robots;  // 0-based offenders
  explicit RankDeficientError(const std::string& msg, std::vector<int> offenders = {})
      : std::runtime_error(msg), robots(std::move(offenders)) {}
};

struct NoPrimitiveError : std::runtime_error {
  std::vector<std::vector<int>> supersets;  // nearest realizable supersets, 0-based
  explicit NoPrimitiveError(const std::string& msg, std::vector<std::vector<int>> nearest = {})
      : std::runtime_error(msg), supersets(std::move(nearest)) {}
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace swarmplan

#endif  // SWARMPLAN_TYPES_HPP_

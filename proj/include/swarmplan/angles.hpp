#ifndef SWARMPLAN_ANGLES_HPP_
#define SWARMPLAN_ANGLES_HPP_

#include <cmath>

namespace swarmplan {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

/// Tolerance for circular angle comparisons.
inline constexpr double kAngleTol = 1e-9;

/// Wraps an angle into [0, 2*pi). Safe for large-magnitude inputs.
inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod rounding can land exactly on 2*pi
  return r;
}

/// Circular distance between two angles, in [0, pi].
inline double circ_dist(double a, double b) {
  double d = wrap_angle(a - b);
  return d <= kPi ? d : kTwoPi - d;
}

/// True when two angles coincide on the circle within kAngleTol.
inline bool angles_equal(double a, double b, double tol = kAngleTol) {
  return circ_dist(a, b) <= tol;
}

}  // namespace swarmplan

#endif  // SWARMPLAN_ANGLES_HPP_

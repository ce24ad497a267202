#ifndef SWARMPLAN_RNG_HPP_
#define SWARMPLAN_RNG_HPP_

#include <cstdint>
#include <random>

namespace swarmplan {

/// Seeded random source with draw functions whose results depend only on the
/// seed and call order. The standard engine is bit-stable across platforms;
/// the distribution helpers here avoid std::uniform_real_distribution and
/// friends, whose outputs are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform integer in [0, n); n must be positive.
  int below(int n) { return static_cast<int>(uniform() * n); }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace swarmplan

#endif  // SWARMPLAN_RNG_HPP_

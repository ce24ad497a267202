#include "swarmplan/simulate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "swarmplan/allocation.hpp"

using namespace swarmplan;

namespace {

SwarmParams params_n(int n, double r = 1.0) {
  SwarmParams p;
  p.n = n;
  p.r = r;
  return p;
}

SwarmState zero_state(int n) {
  SwarmState s;
  s.positions.assign(n, {0.0, 0.0});
  s.orientations.assign(n, 0.0);
  return s;
}

TEST(Step, ActiveTranslatesInactiveRotates) {
  SwarmParams p = params_n(2, 2.0);
  SwarmState s = zero_state(2);
  s.orientations[0] = oracle::kTau / 8;  // 45 degrees
  ControlStep c{mask_of({0}), 1.0};
  SwarmState out = step(s, c, p);
  EXPECT_NEAR(out.positions[0].x, std::cos(oracle::kTau / 8), 1e-15);
  EXPECT_NEAR(out.positions[0].y, std::sin(oracle::kTau / 8), 1e-15);
  EXPECT_DOUBLE_EQ(out.orientations[0], s.orientations[0]);
  EXPECT_DOUBLE_EQ(out.positions[1].x, 0.0);
  EXPECT_NEAR(out.orientations[1], 0.5, 1e-15);  // arc / r = 1 / 2
}

TEST(Step, RejectsNegativeArc) {
  SwarmParams p = params_n(1);
  EXPECT_THROW(step(zero_state(1), ControlStep{0, -0.1}, p), std::invalid_argument);
}

TEST(Step, OrientationStaysNormalized) {
  SwarmParams p = params_n(1, 0.01);  // fast turner
  SwarmState s = zero_state(1);
  for (int k = 0; k < 100; ++k) {
    s = step(s, ControlStep{0, 1.7}, p);
    EXPECT_GE(s.orientations[0], 0.0);
    EXPECT_LT(s.orientations[0], oracle::kTau);
  }
}

TEST(Simulate, MatchesOracleOnRandomSequences) {
  std::mt19937_64 rng(314159);
  SwarmParams p = params_n(6);
  for (int trial = 0; trial < 50; ++trial) {
    SwarmState s0 = oracle::random_state(rng, 6);
    ActivationSequence seq;
    for (int k = 0; k < 40; ++k) {
      std::uint64_t mask = rng() & 0x3f;
      double arc = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 3.0;
      seq.push_back({mask, arc});
    }
    const SwarmState fin = run_sequence(s0, seq, p);
    const oracle::Swarm ref = oracle::apply_sequence(oracle::from_state(s0), seq, p);
    for (int i = 0; i < 6; ++i) {
      EXPECT_NEAR(fin.positions[i].x, ref[i].x, 1e-9);
      EXPECT_NEAR(fin.positions[i].y, ref[i].y, 1e-9);
      EXPECT_LT(oracle::circ_gap(fin.orientations[i], ref[i].theta), 1e-9);
    }
  }
}

TEST(Simulate, TrajectoryStartsAtInitialStateAndSubsamples) {
  SwarmParams p = params_n(1);
  SwarmState s = zero_state(1);
  ActivationSequence seq{{mask_of({0}), 2.0}};
  Trajectory t = simulate(s, seq, p, 0.5);
  // initial + 3 interior + end
  ASSERT_EQ(t.samples.size(), 5u);
  EXPECT_TRUE(t.front() == s);
  EXPECT_NEAR(t.samples[1].positions[0].x, 0.5, 1e-15);
  EXPECT_NEAR(t.back().positions[0].x, 2.0, 1e-15);
}

TEST(Simulate, CompositionIsExact) {
  std::mt19937_64 rng(99);
  SwarmParams p = params_n(4);
  SwarmState s0 = oracle::random_state(rng, 4);
  ActivationSequence a, b;
  for (int k = 0; k < 25; ++k) {
    a.push_back({rng() & 0xf, static_cast<double>(rng() >> 11) * 0x1.0p-53});
    b.push_back({rng() & 0xf, static_cast<double>(rng() >> 11) * 0x1.0p-53});
  }
  ActivationSequence ab = a;
  append_sequence(ab, b);
  const SwarmState direct = run_sequence(s0, ab, p);
  const SwarmState staged = run_sequence(run_sequence(s0, a, p), b, p);
  EXPECT_TRUE(direct == staged);  // bit-for-bit
}

TEST(Simulate, DeterministicReplay) {
  std::mt19937_64 rng(7);
  SwarmParams p = params_n(5);
  SwarmState s0 = oracle::random_state(rng, 5);
  ActivationSequence seq;
  for (int k = 0; k < 30; ++k)
    seq.push_back({rng() & 0x1f, static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2});
  const Trajectory t1 = simulate(s0, seq, p);
  const Trajectory t2 = simulate(s0, seq, p);
  ASSERT_EQ(t1.samples.size(), t2.samples.size());
  for (std::size_t k = 0; k < t1.samples.size(); ++k)
    EXPECT_TRUE(t1.samples[k] == t2.samples[k]);
}

TEST(Simulate, Se2Equivariance) {
  // Rigidly moving the start state commutes with simulation.
  std::mt19937_64 rng(2024);
  SwarmParams p = params_n(3);
  SwarmState s0 = oracle::random_state(rng, 3);
  ActivationSequence seq;
  for (int k = 0; k < 20; ++k)
    seq.push_back({rng() & 0x7, static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2});
  const double phi = 1.234;
  const Vec2 t{3.0, -2.0};
  auto transform = [&](const SwarmState& s) {
    SwarmState out = s;
    for (int i = 0; i < s.size(); ++i) {
      const Vec2& q = s.positions[i];
      out.positions[i] = {q.x * std::cos(phi) - q.y * std::sin(phi) + t.x,
                          q.x * std::sin(phi) + q.y * std::cos(phi) + t.y};
      out.orientations[i] = wrap_angle(s.orientations[i] + phi);
    }
    return out;
  };
  const SwarmState a = transform(run_sequence(s0, seq, p));
  const SwarmState b = run_sequence(transform(s0), seq, p);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(a.positions[i].x, b.positions[i].x, 1e-9);
    EXPECT_NEAR(a.positions[i].y, b.positions[i].y, 1e-9);
    EXPECT_LT(circ_dist(a.orientations[i], b.orientations[i]), 1e-9);
  }
}

TEST(Metrics, PathLengthCountsTranslationOnly) {
  SwarmParams p = params_n(3);
  SwarmState s = zero_state(3);
  ActivationSequence seq{{mask_of({0, 2}), 1.5}, {0, 2.0}, {mask_of({1}), 0.5}};
  EXPECT_DOUBLE_EQ(path_length(seq), 1.5 * 2 + 0.5);
  const Trajectory t = simulate(s, seq, p);
  EXPECT_NEAR(path_length(t), 1.5 * 2 + 0.5, 1e-12);
}

TEST(Metrics, ExecutionTimeCountsEveryStep) {
  SwarmParams p = params_n(3);
  p.u_nominal = 2.0;
  ActivationSequence seq{{mask_of({0}), 1.0}, {0, 3.0}};
  EXPECT_DOUBLE_EQ(execution_time(seq, p), (1.0 + 3.0) / 2.0);
}

TEST(Metrics, PathLengthRoutesAgreeOnRandomSequences) {
  std::mt19937_64 rng(5150);
  SwarmParams p = params_n(6);
  for (int trial = 0; trial < 20; ++trial) {
    SwarmState s0 = oracle::random_state(rng, 6);
    ActivationSequence seq;
    for (int k = 0; k < 30; ++k)
      seq.push_back({rng() & 0x3f, static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.5});
    EXPECT_NEAR(path_length(simulate(s0, seq, p)), path_length(seq), 1e-9);
  }
}

TEST(Metrics, NetRotationTracksInactiveArcs) {
  SwarmParams p = params_n(2, 2.0);
  ActivationSequence seq{{mask_of({0}), 1.0}, {0, 2.0}};
  const auto d = net_rotation(seq, p);
  EXPECT_DOUBLE_EQ(d[0], 1.0);        // only step 2: 2.0 / 2.0
  EXPECT_DOUBLE_EQ(d[1], 1.5);        // both steps: (1.0 + 2.0) / 2.0
}

}  // namespace

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "swarmplan/allocation.hpp"
#include "swarmplan/primitives.hpp"
#include "swarmplan/simulate.hpp"

using namespace swarmplan;

namespace {

constexpr double kPosTol = 1e-6;

SwarmParams params_n(int n, double r = 1.0) {
  SwarmParams p;
  p.n = n;
  p.r = r;
  return p;
}

double uni(std::mt19937_64& rng, double lo, double hi) {
  return lo + static_cast<double>(rng() >> 11) * 0x1.0p-53 * (hi - lo);
}

// Rounds of pair-cancelling replays needed to clear a group of this size.
int doubling_rounds(int group_size) { return (group_size - 1 + 1) / 2; }

TEST(IsolationGroup, PicksSmallestContainingGroup) {
  const GroupAllocation alloc = allocate_groups(6);
  // Every group has three members for n=6, so ties resolve to lowest index.
  EXPECT_EQ(isolation_group(alloc, 3), 0);
  EXPECT_EQ(isolation_group(alloc, 1), 1);
  EXPECT_EQ(isolation_group(alloc, 0), 2);
  EXPECT_EQ(isolation_group(alloc, 2), 1);  // in the 2nd and 3rd groups
  EXPECT_EQ(isolation_group(alloc, 5), 0);  // in the 1st and 2nd groups
  EXPECT_EQ(isolation_group(alloc, 4), 0);  // in the 1st and 3rd groups

  const GroupAllocation a14 = allocate_groups(14);
  // Group sizes differ for n=14; the smallest containing group wins.
  for (int k = 0; k < 14; ++k) {
    const int g = isolation_group(a14, k);
    ASSERT_TRUE(a14.member(g, k));
    const std::size_t size = a14.group_members(g).size();
    for (int other = 0; other < a14.m - 1; ++other)
      if (a14.member(other, k)) {
        const std::size_t osize = a14.group_members(other).size();
        EXPECT_TRUE(size < osize || (size == osize && g <= other));
      }
  }
}

TEST(IsolateTranslate, OnlyTargetMovesAcrossSizes) {
  std::mt19937_64 rng(201);
  for (int n : {3, 6, 14}) {
    const GroupAllocation alloc = allocate_groups(n);
    const SwarmParams p = params_n(n, 1.2);
    for (int k = 0; k < n; ++k) {
      const SwarmState s0 = oracle::random_state(rng, n);
      const double heading = uni(rng, 0.0, kTwoPi);
      const double d = 0.4;
      const ActivationSequence seq = isolate_translate(s0, k, d, heading, alloc, p);
      const int gsize =
          static_cast<int>(alloc.group_members(isolation_group(alloc, k)).size());
      const double dist = d * std::pow(2.0, doubling_rounds(gsize));
      const oracle::Swarm fin = oracle::apply_sequence(oracle::from_state(s0), seq, p);
      for (int i = 0; i < n; ++i) {
        if (i == k) {
          EXPECT_NEAR(fin[i].x, s0.positions[i].x + dist * std::cos(heading), kPosTol)
              << "n=" << n << " k=" << k;
          EXPECT_NEAR(fin[i].y, s0.positions[i].y + dist * std::sin(heading), kPosTol);
        } else {
          EXPECT_NEAR(fin[i].x, s0.positions[i].x, kPosTol)
              << "n=" << n << " k=" << k << " i=" << i;
          EXPECT_NEAR(fin[i].y, s0.positions[i].y, kPosTol);
        }
      }
    }
  }
}

TEST(IsolateTranslate, NegativeDistanceFoldsIntoHeading) {
  std::mt19937_64 rng(211);
  const GroupAllocation alloc = allocate_groups(6);
  const SwarmParams p = params_n(6);
  const SwarmState s0 = oracle::random_state(rng, 6);
  const ActivationSequence a = isolate_translate(s0, 2, -0.3, 1.0, alloc, p);
  const ActivationSequence b = isolate_translate(s0, 2, 0.3, wrap_angle(1.0 + kPi), alloc, p);
  const SwarmState fa = run_sequence(s0, a, p);
  const SwarmState fb = run_sequence(s0, b, p);
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(fa.positions[i].x, fb.positions[i].x, kPosTol);
    EXPECT_NEAR(fa.positions[i].y, fb.positions[i].y, kPosTol);
  }
}

TEST(IsolateTranslate, TargetKeepsItsCommandedHeading) {
  std::mt19937_64 rng(215);
  const GroupAllocation alloc = allocate_groups(6);
  const SwarmParams p = params_n(6);
  const SwarmState s0 = oracle::random_state(rng, 6);
  const double heading = 2.4;
  const ActivationSequence seq = isolate_translate(s0, 4, 0.6, heading, alloc, p);
  const SwarmState fin = run_sequence(s0, seq, p);
  EXPECT_LT(circ_dist(fin.orientations[4], heading), 1e-8);
}

TEST(IsolateTranslate, LegCountGrowsWhenArcsSplit) {
  // d = 0.7 exceeds the 0.5 excursion bound, so orientation composites split
  // their translation arcs; the doubled replay still lands exactly.
  std::mt19937_64 rng(221);
  const GroupAllocation alloc = allocate_groups(6);
  const SwarmParams p = params_n(6);
  const SwarmState s0 = oracle::random_state(rng, 6);
  const ActivationSequence res = isolate_translate(s0, 3, 0.7, 0.0, alloc, p, 0.5);
  const std::uint64_t row = alloc.rows[isolation_group(alloc, 3)];
  int carrier_legs = 0;
  for (const ControlStep& s : res)
    if (s.mask == row) ++carrier_legs;
  // One base maneuver replayed once per doubling round leaves at least four
  // carrier-mask translation legs.
  EXPECT_GE(carrier_legs, 4);
  const oracle::Swarm fin = oracle::apply_sequence(oracle::from_state(s0), res, p);
  const int gsize =
      static_cast<int>(alloc.group_members(isolation_group(alloc, 3)).size());
  const double dist = 0.7 * std::pow(2.0, doubling_rounds(gsize));
  EXPECT_NEAR(fin[3].x, s0.positions[3].x + dist, kPosTol);
  EXPECT_NEAR(fin[3].y, s0.positions[3].y, kPosTol);
}

TEST(IsolateTranslate, RejectsBadRobotIndex) {
  const GroupAllocation alloc = allocate_groups(6);
  const SwarmParams p = params_n(6);
  SwarmState s0;
  s0.positions.assign(6, Vec2{0, 0});
  s0.orientations.assign(6, 0.0);
  EXPECT_THROW(isolate_translate(s0, -1, 1.0, 0.0, alloc, p), std::invalid_argument);
  EXPECT_THROW(isolate_translate(s0, 6, 1.0, 0.0, alloc, p), std::invalid_argument);
}

TEST(DistinctRadiusIsolate, TwoRobotsClosedForm) {
  SwarmParams p;
  p.n = 2;
  p.r = 1.0;
  p.r_overrides = {1.0, 2.0};
  SwarmState s0;
  s0.positions = {Vec2{0.0, 0.0}, Vec2{3.0, 1.0}};
  s0.orientations = {0.9, 0.7};
  const double d = 0.5;
  const ActivationSequence seq = distinct_radius_isolate(1, d, p);
  const oracle::Swarm fin = oracle::apply_sequence(oracle::from_state(s0), seq, p);
  // One cancelling round flips robot 1 exactly pi, which spins robot 2 by
  // pi * r1/r2 = pi/2; robot 2 therefore lands at the two-leg sum.
  const double t = s0.orientations[1];
  EXPECT_NEAR(fin[1].x, s0.positions[1].x + d * (std::cos(t) + std::cos(t + kPi / 2)),
              kPosTol);
  EXPECT_NEAR(fin[1].y, s0.positions[1].y + d * (std::sin(t) + std::sin(t + kPi / 2)),
              kPosTol);
  EXPECT_NEAR(fin[0].x, s0.positions[0].x, kPosTol);
  EXPECT_NEAR(fin[0].y, s0.positions[0].y, kPosTol);
  // All steps use either the all-robots mask or the empty mask.
  const std::uint64_t all = (std::uint64_t{1} << 2) - 1;
  for (const ControlStep& s : seq) EXPECT_TRUE(s.mask == all || s.mask == 0u);
}

TEST(DistinctRadiusIsolate, ThreeRobotsEachTarget) {
  SwarmParams p;
  p.n = 3;
  p.r = 1.0;
  p.r_overrides = {1.0, 1.7, 2.3};
  std::mt19937_64 rng(241);
  const std::uint64_t all = (std::uint64_t{1} << 3) - 1;
  for (int k = 0; k < 3; ++k) {
    const SwarmState s0 = oracle::random_state(rng, 3);
    const ActivationSequence seq = distinct_radius_isolate(k, 0.4, p);
    const oracle::Swarm fin = oracle::apply_sequence(oracle::from_state(s0), seq, p);
    double moved = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double di = std::hypot(fin[i].x - s0.positions[i].x,
                                   fin[i].y - s0.positions[i].y);
      if (i == k) {
        moved = di;
      } else {
        EXPECT_NEAR(fin[i].x, s0.positions[i].x, kPosTol) << "k=" << k << " i=" << i;
        EXPECT_NEAR(fin[i].y, s0.positions[i].y, kPosTol);
      }
    }
    EXPECT_GT(moved, 1e-2) << "k=" << k;
    for (const ControlStep& s : seq) EXPECT_TRUE(s.mask == all || s.mask == 0u);
  }
}

TEST(DistinctRadiusIsolate, OddIntegerRatioObstructionThrows) {
  // Isolating robot 1 among radii (1,2,3): cancelling robot 3 must flip it
  // by an odd multiple of pi, which turns robot 1 (ratio 3) by pi as well,
  // negating its progress; every full-turn adjustment lands on pi again.
  SwarmParams p;
  p.n = 3;
  p.r = 1.0;
  p.r_overrides = {1.0, 2.0, 3.0};
  try {
    distinct_radius_isolate(0, 0.4, p);
    FAIL() << "expected an obstruction rejection";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("robots 1 and 3"), std::string::npos) << msg;
  }
  // Other targets in the same swarm avoid the boundary and succeed.
  std::mt19937_64 rng(251);
  for (int k : {1, 2}) {
    const SwarmState s0 = oracle::random_state(rng, 3);
    const ActivationSequence seq = distinct_radius_isolate(k, 0.4, p);
    const oracle::Swarm fin = oracle::apply_sequence(oracle::from_state(s0), seq, p);
    for (int i = 0; i < 3; ++i)
      if (i != k) {
        EXPECT_NEAR(fin[i].x, s0.positions[i].x, kPosTol) << "k=" << k;
        EXPECT_NEAR(fin[i].y, s0.positions[i].y, kPosTol) << "k=" << k;
      }
  }
}

TEST(DistinctRadiusIsolate, FullTurnAdjustmentClearsPiBoundary) {
  // Radii (2.5, 1, 3), target robot 3: the second cancelling rotation lands
  // robot 3 exactly on pi unless robot 2 takes one extra full turn.
  SwarmParams p;
  p.n = 3;
  p.r = 1.0;
  p.r_overrides = {2.5, 1.0, 3.0};
  std::mt19937_64 rng(261);
  const SwarmState s0 = oracle::random_state(rng, 3);
  const ActivationSequence seq = distinct_radius_isolate(2, 0.4, p);
  const oracle::Swarm fin = oracle::apply_sequence(oracle::from_state(s0), seq, p);
  const double moved = std::hypot(fin[2].x - s0.positions[2].x,
                                  fin[2].y - s0.positions[2].y);
  EXPECT_GT(moved, 1e-2);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(fin[i].x, s0.positions[i].x, kPosTol) << "i=" << i;
    EXPECT_NEAR(fin[i].y, s0.positions[i].y, kPosTol) << "i=" << i;
  }
}

TEST(DistinctRadiusIsolate, DuplicateRadiiRejectedByName) {
  SwarmParams p;
  p.n = 3;
  p.r = 1.0;
  p.r_overrides = {1.0, 2.0, 2.0};
  try {
    distinct_radius_isolate(0, 1.0, p);
    FAIL() << "expected a duplicate-radius rejection";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("robots 2 and 3"), std::string::npos) << msg;
  }
}

}  // namespace

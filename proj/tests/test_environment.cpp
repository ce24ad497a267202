#include "swarmplan/environment.hpp"

#include <gtest/gtest.h>

#include "swarmplan/simulate.hpp"
#include "swarmplan/verify.hpp"

using namespace swarmplan;

namespace {

Environment box(double xmin, double ymin, double xmax, double ymax) {
  Environment env;
  env.bounds = {xmin, ymin, xmax, ymax};
  return env;
}

SwarmState single(double x, double y, double theta = 0.0) {
  SwarmState s;
  s.positions = {Vec2{x, y}};
  s.orientations = {theta};
  return s;
}

TEST(Environment, BoundaryIsClosed) {
  Environment env = box(0, 0, 10, 10);
  EXPECT_TRUE(check_state(single(5, 5), env).ok);
  EXPECT_TRUE(check_state(single(0, 0), env).ok);
  EXPECT_TRUE(check_state(single(10, 10), env).ok);
  const CollisionReport out = check_state(single(10.001, 5), env);
  EXPECT_FALSE(out.ok);
  EXPECT_NE(out.detail.find("robot 1"), std::string::npos);
  EXPECT_NE(out.detail.find("workspace"), std::string::npos);

  env.robot_radius = 0.5;
  EXPECT_TRUE(check_state(single(0.5, 0.5), env).ok);  // disc tangent to both walls
  EXPECT_FALSE(check_state(single(0.4, 5), env).ok);
}

TEST(Environment, ObstacleTangencyPasses) {
  Environment env = box(0, 0, 10, 10);
  env.obstacles = {{Vec2{5, 5}, 1.0}};
  EXPECT_TRUE(check_state(single(7, 5), env).ok);
  EXPECT_TRUE(check_state(single(6, 5), env).ok);  // exactly tangent
  const CollisionReport out = check_state(single(5.9, 5), env);
  EXPECT_FALSE(out.ok);
  EXPECT_NE(out.detail.find("obstacle 1"), std::string::npos);

  env.robot_radius = 0.5;
  EXPECT_TRUE(check_state(single(6.5, 5), env).ok);  // inflated tangency
  EXPECT_FALSE(check_state(single(6.4, 5), env).ok);
}

TEST(Environment, PairwiseRules) {
  Environment env = box(0, 0, 10, 10);
  SwarmState s;
  s.positions = {Vec2{2, 2}, Vec2{2.6, 2}};
  s.orientations = {0.0, 0.0};
  EXPECT_TRUE(check_state(s, env).ok);  // point robots never collide

  env.robot_radius = 0.4;
  const CollisionReport touching = check_state(s, env);
  EXPECT_FALSE(touching.ok);  // discs of radius 0.4 at distance 0.6 overlap
  EXPECT_NE(touching.detail.find("robots 1 and 2"), std::string::npos);

  env.robot_radius = 0.3;
  EXPECT_TRUE(check_state(s, env).ok);  // distance 0.6 = 2 * 0.3 is tangent

  env.min_separation = 1.0;
  EXPECT_FALSE(check_state(s, env).ok);  // extra clearance rule dominates
}

TEST(Environment, TrajectorySweepIsCaught) {
  Environment env = box(0, 0, 10, 10);
  env.obstacles = {{Vec2{3, 5}, 0.5}};
  SwarmParams p;
  p.n = 1;
  const SwarmState s0 = single(1, 5);
  const ActivationSequence seq{ControlStep{1, 4.0}};
  // Both endpoints are clear of the obstacle...
  EXPECT_TRUE(check_state(s0, env).ok);
  EXPECT_TRUE(check_state(run_sequence(s0, seq, p), env).ok);
  // ...but the swept line crosses it, which the sampled replay detects.
  const Trajectory traj = simulate(s0, seq, p, 0.5);
  EXPECT_FALSE(check_trajectory(traj, env).ok);
}

TEST(Environment, ValidationRejectsDegenerateInputs) {
  Environment env = box(5, 0, 5, 10);
  EXPECT_THROW(env.validate(), ValidationError);
  env = box(0, 0, 10, 10);
  env.robot_radius = -0.1;
  EXPECT_THROW(env.validate(), ValidationError);
  env.robot_radius = 0.0;
  env.obstacles = {{Vec2{1, 1}, 0.0}};
  EXPECT_THROW(env.validate(), ValidationError);
}

Scenario straight_line_case() {
  Scenario sc;
  sc.params.n = 1;
  sc.start = single(1, 5);
  sc.goals = {Vec2{5, 5}};
  sc.goal_radius = 0.5;
  sc.env = box(0, 0, 10, 10);
  return sc;
}

TEST(Verify, AcceptsExactArrival) {
  const Scenario sc = straight_line_case();
  sc.validate();
  const VerifyReport rep = verify_plan(sc, {ControlStep{1, 4.0}});
  EXPECT_TRUE(rep.ok) << rep.detail;
}

TEST(Verify, ReportsGoalMiss) {
  const Scenario sc = straight_line_case();
  const VerifyReport rep = verify_plan(sc, {ControlStep{1, 2.0}});
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.detail.find("robot 1"), std::string::npos);
  EXPECT_NE(rep.detail.find("stops"), std::string::npos);
}

TEST(Verify, ReportsSweptCollision) {
  Scenario sc = straight_line_case();
  sc.env.obstacles = {{Vec2{3, 5}, 0.5}};
  const VerifyReport rep = verify_plan(sc, {ControlStep{1, 4.0}});
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.detail.find("obstacle"), std::string::npos);
}

TEST(Verify, ReportsNegativeArc) {
  const Scenario sc = straight_line_case();
  const VerifyReport rep = verify_plan(sc, {ControlStep{1, -1.0}});
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.detail.find("negative"), std::string::npos);
}

TEST(Scenario, ValidateCatchesBadStates) {
  Scenario sc = straight_line_case();
  sc.validate();
  sc.goals = {Vec2{11, 5}};  // outside the workspace
  EXPECT_THROW(sc.validate(), ValidationError);
  sc = straight_line_case();
  sc.goal_radius = 0.0;
  EXPECT_THROW(sc.validate(), ValidationError);
  sc = straight_line_case();
  sc.env.obstacles = {{Vec2{1, 5}, 0.4}};  // start sits inside
  EXPECT_THROW(sc.validate(), ValidationError);
}

}  // namespace

#ifndef SWARMPLAN_NUMOPT_HPP_
#define SWARMPLAN_NUMOPT_HPP_

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <vector>

#include "swarmplan/allocation.hpp"
#include "swarmplan/angles.hpp"
#include "swarmplan/environment.hpp"
#include "swarmplan/primitives.hpp"
#include "swarmplan/rng.hpp"
#include "swarmplan/scenario.hpp"
#include "swarmplan/simulate.hpp"

namespace swarmplan {

/// Settings for arc optimization over a fixed activation schedule.
struct NumoptOptions {
  double tol = 1e-3;           // max-norm residual accepted as feasible
  int max_iterations = 400;    // damped Gauss-Newton iterations
  int descent_iterations = 60; // null-space path-length descent rounds
  double step_limit = 2.0;     // trust-region cap on one solver step (sqrt-arc space)
  // Extra equality rows: the named robot's net rotation must equal `delta`
  // modulo a full turn. Used when a schedule must restore headings.
  std::vector<OrientationTarget> rotation_rows;
};

struct ScheduleAttempt {
  bool feasible = false;
  std::vector<double> arcs;  // one non-negative arc per schedule entry
  double residual = 0.0;     // max-norm constraint violation at the result
  double path_length = 0.0;  // sum of arc * active-robot-count
};

namespace detail {

inline double wrap_signed(double a) {
  const double w = wrap_angle(a);
  return w > kPi ? w - kTwoPi : w;
}

struct ScheduleModel {
  const Scenario* sc = nullptr;
  const GroupAllocation* alloc = nullptr;
  std::vector<std::uint64_t> masks;   // per schedule entry
  std::vector<double> active_count;   // per schedule entry
  std::vector<Vec2> goals;            // solver target (may be blended)
  int rows = 0;                       // residual dimension

  int n() const { return sc->params.n; }
  int k() const { return static_cast<int>(masks.size()); }
};

/// Forward pass: per-robot entry angle of every step plus final poses.
struct ForwardPass {
  Eigen::MatrixXd entry_theta;  // n x K
  std::vector<Vec2> final_pos;
  std::vector<double> net_rot;
};

inline ForwardPass forward_pass(const ScheduleModel& model, const Eigen::VectorXd& t) {
  const int n = model.n(), k = model.k();
  ForwardPass f;
  f.entry_theta.resize(n, std::max(k, 1));
  f.final_pos = model.sc->start.positions;
  f.net_rot.assign(n, 0.0);
  std::vector<double> theta = model.sc->start.orientations;
  for (int j = 0; j < k; ++j) {
    for (int l = 0; l < n; ++l) {
      f.entry_theta(l, j) = theta[l];
      if (model.masks[j] >> l & 1) {
        f.final_pos[l] = f.final_pos[l] + heading_vec(theta[l]) * t(j);
      } else {
        const double turn = t(j) / model.sc->params.radius_of(l);
        theta[l] += turn;
        f.net_rot[l] += turn;
      }
    }
  }
  return f;
}

inline Eigen::VectorXd residual_of(const ScheduleModel& model, const NumoptOptions& opts,
                                   const ForwardPass& f) {
  const int n = model.n();
  Eigen::VectorXd r(model.rows);
  for (int l = 0; l < n; ++l) {
    r(2 * l) = f.final_pos[l].x - model.goals[l].x;
    r(2 * l + 1) = f.final_pos[l].y - model.goals[l].y;
  }
  for (std::size_t q = 0; q < opts.rotation_rows.size(); ++q) {
    const OrientationTarget& row = opts.rotation_rows[q];
    r(2 * n + static_cast<int>(q)) = wrap_signed(f.net_rot[row.robot] - row.delta);
  }
  return r;
}

/// Reverse accumulation of d(final position)/d(arc): a translation arc moves
/// its robot along the entry heading; a rotation arc tilts every later
/// translation of that robot by 1/r.
inline Eigen::MatrixXd jacobian_of(const ScheduleModel& model, const NumoptOptions& opts,
                                   const ForwardPass& f, const Eigen::VectorXd& t) {
  const int n = model.n(), k = model.k();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(model.rows, k);
  for (int l = 0; l < n; ++l) {
    double wx = 0.0, wy = 0.0;  // sum of t_j * d(e(theta_j))/d(theta) over later active steps
    for (int j = k - 1; j >= 0; --j) {
      const double th = f.entry_theta(l, j);
      if (model.masks[j] >> l & 1) {
        jac(2 * l, j) = std::cos(th);
        jac(2 * l + 1, j) = std::sin(th);
        wx += -std::sin(th) * t(j);
        wy += std::cos(th) * t(j);
      } else {
        const double inv_r = 1.0 / model.sc->params.radius_of(l);
        jac(2 * l, j) = wx * inv_r;
        jac(2 * l + 1, j) = wy * inv_r;
      }
    }
  }
  for (std::size_t q = 0; q < opts.rotation_rows.size(); ++q) {
    const OrientationTarget& row = opts.rotation_rows[q];
    const double inv_r = 1.0 / model.sc->params.radius_of(row.robot);
    for (int j = 0; j < k; ++j)
      if (!(model.masks[j] >> row.robot & 1))
        jac(2 * n + static_cast<int>(q), j) = inv_r;
  }
  return jac;
}

/// The arcs are optimized through the substitution arc_j = s_j^2, which keeps
/// them non-negative without clipped projections (clipping stalls the solver
/// when many arcs pin at zero). These helpers evaluate in s-space.
inline Eigen::VectorXd arcs_of(const Eigen::VectorXd& s) { return s.array().square(); }

inline Eigen::MatrixXd jacobian_s(const ScheduleModel& model, const NumoptOptions& opts,
                                  const ForwardPass& f, const Eigen::VectorXd& s) {
  Eigen::MatrixXd jac = jacobian_of(model, opts, f, arcs_of(s));
  for (int j = 0; j < s.size(); ++j) jac.col(j) *= 2.0 * s(j);
  return jac;
}

/// Damped Gauss-Newton in s-space toward residual zero, with gain-ratio
/// Levenberg control: the damping falls quickly while the quadratic model
/// predicts well and backs off by doubling when it does not, so it recovers
/// after grinding through tightly curved regions instead of ratcheting up
/// until steps vanish. Returns the final max-norm residual.
inline double gauss_newton(const ScheduleModel& model, const NumoptOptions& opts,
                           Eigen::VectorXd& s, int iterations) {
  ForwardPass f = forward_pass(model, arcs_of(s));
  Eigen::VectorXd r = residual_of(model, opts, f);
  double lambda = -1.0;  // initialized from the first Jacobian below
  double nu = 2.0;
  bool refresh = true;
  Eigen::MatrixXd jac, jtj;
  Eigen::VectorXd jtr;
  for (int it = 0; it < iterations; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= opts.tol) break;
    if (refresh) {
      jac = jacobian_s(model, opts, f, s);
      jtj = jac.transpose() * jac;
      jtr = jac.transpose() * r;
      refresh = false;
    }
    if (lambda < 0.0) lambda = 1e-3 * std::max(jtj.diagonal().maxCoeff(), 1e-8);
    Eigen::MatrixXd damped = jtj;
    // Marquardt scaling keeps weak coordinates (arcs shrunk toward zero)
    // mobile; the absolute floor keeps the system positive definite when a
    // column vanishes outright.
    damped.diagonal() += lambda * (jtj.diagonal() / std::max(jtj.diagonal().maxCoeff(), 1e-8))
                                      .cwiseMax(1e-6);
    Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
    // Keep steps short so the solver settles on the solution nearest the
    // start instead of leaping across periodic replicas of it.
    const double len = delta.norm();
    if (len > opts.step_limit) delta *= opts.step_limit / len;
    if (delta.norm() <= 1e-13 * (s.norm() + 1e-13)) break;
    const Eigen::VectorXd s_try = s + delta;
    const ForwardPass f_try = forward_pass(model, arcs_of(s_try));
    const Eigen::VectorXd r_try = residual_of(model, opts, f_try);
    // Gain ratio: actual decrease of |r|^2 over the quadratic model's
    // prediction for this exact (possibly clamped) step.
    const double actual = r.squaredNorm() - r_try.squaredNorm();
    const double predicted =
        -2.0 * jtr.dot(delta) - (jac * delta).squaredNorm();
    if (actual > 0.0) {
      s = s_try;
      f = f_try;
      r = r_try;
      const double rho = predicted > 0.0 ? actual / predicted : 1.0;
      lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
      lambda = std::max(lambda, 1e-12);
      nu = 2.0;
      refresh = true;
    } else {
      lambda *= nu;
      nu *= 2.0;
      if (lambda > 1e16) break;
    }
  }
  return r.lpNorm<Eigen::Infinity>();
}

}  // namespace detail

/// Optimizes the arcs of a fixed group schedule: drives every robot onto its
/// goal point (plus any requested net-rotation rows), then shortens the total
/// swept path by descending along the constraint null space. Schedule entries
/// are group indices, 0-based, where the last group rotates everyone.
inline ScheduleAttempt optimize_arcs(const Scenario& sc, const GroupAllocation& alloc,
                                     const std::vector<int>& schedule,
                                     const std::vector<double>& init,
                                     const NumoptOptions& opts = {}) {
  if (schedule.size() != init.size())
    throw std::invalid_argument("one initial arc per schedule entry required");
  detail::ScheduleModel model;
  model.sc = &sc;
  model.alloc = &alloc;
  for (int g : schedule) {
    if (g < 0 || g >= alloc.m) throw std::invalid_argument("schedule group index out of range");
    model.masks.push_back(alloc.rows[g]);
    model.active_count.push_back(static_cast<double>(popcount_mask(alloc.rows[g])));
  }
  model.goals = sc.goals;
  model.rows = 2 * sc.params.n + static_cast<int>(opts.rotation_rows.size());
  for (const OrientationTarget& row : opts.rotation_rows)
    if (row.robot < 0 || row.robot >= sc.params.n)
      throw std::invalid_argument("rotation row robot out of range");

  const int k = model.k();
  Eigen::VectorXd s(k);
  for (int j = 0; j < k; ++j) {
    if (init[j] < 0.0) throw std::invalid_argument("initial arcs must be non-negative");
    s(j) = std::sqrt(init[j]);
  }
  const Eigen::VectorXd active =
      Eigen::Map<const Eigen::VectorXd>(model.active_count.data(), k);
  auto cost = [&](const Eigen::VectorXd& v) { return active.dot(detail::arcs_of(v)); };
  // A step that activates nobody only spins headings in place. When every
  // robot shares one turning radius, whole turns of such a step cancel
  // exactly, so trim them: the residual is untouched and replays get shorter.
  bool uniform_radius = true;
  for (int l = 1; l < sc.params.n; ++l)
    if (sc.params.radius_of(l) != sc.params.radius_of(0)) uniform_radius = false;
  const double spin_period = kTwoPi * sc.params.radius_of(0);
  auto trim_idle_spins = [&](Eigen::VectorXd& v) {
    if (!uniform_radius) return;
    for (int j = 0; j < k; ++j) {
      if (model.active_count[j] > 0.0) continue;
      const double arc = v(j) * v(j);
      if (arc >= spin_period) v(j) = std::sqrt(std::fmod(arc, spin_period));
    }
  };
  auto finish = [&](ScheduleAttempt& out) {
    const Eigen::VectorXd arcs = detail::arcs_of(s);
    out.arcs.assign(arcs.data(), arcs.data() + k);
    out.path_length = cost(s);
  };

  ScheduleAttempt out;
  out.residual = detail::gauss_newton(model, opts, s, opts.max_iterations);
  if (out.residual > opts.tol) {
    finish(out);
    return out;
  }
  trim_idle_spins(s);

  // Feasible: walk downhill in path length inside the constraint null space,
  // restoring feasibility after every step and keeping only improvements.
  for (int round = 0; round < opts.descent_iterations; ++round) {
    const detail::ForwardPass f = detail::forward_pass(model, detail::arcs_of(s));
    const Eigen::MatrixXd jac = detail::jacobian_s(model, opts, f, s);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
    const double sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    const double thresh = std::max(1e-9, sigma_max * 1e-10);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > thresh) ++rank;
    const Eigen::MatrixXd v_range = svd.matrixV().leftCols(rank);
    // Path length is sum_j active_j * s_j^2, so its gradient in s-space is
    // 2 * active_j * s_j.
    const Eigen::VectorXd cost_grad = 2.0 * active.cwiseProduct(s);
    Eigen::VectorXd dir = -(cost_grad - v_range * (v_range.transpose() * cost_grad));
    const double norm = dir.norm();
    if (norm < 1e-9) break;
    dir /= norm;

    bool accepted = false;
    for (double eta = 1.0; eta > 1e-4; eta *= 0.5) {
      Eigen::VectorXd s_try = s + eta * dir;
      const double res = detail::gauss_newton(model, opts, s_try, 50);
      if (res <= opts.tol && cost(s_try) < cost(s) - 1e-9) {
        s = s_try;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  trim_idle_spins(s);

  out.feasible = true;
  out.residual =
      detail::residual_of(model, opts, detail::forward_pass(model, detail::arcs_of(s)))
          .lpNorm<Eigen::Infinity>();
  finish(out);
  return out;
}

/// Builds the activation sequence a solved schedule describes, dropping
/// numerically dead arcs.
inline ActivationSequence schedule_to_sequence(const GroupAllocation& alloc,
                                               const std::vector<int>& schedule,
                                               const std::vector<double>& arcs) {
  ActivationSequence seq;
  for (std::size_t j = 0; j < schedule.size(); ++j)
    if (arcs[j] > 1e-12) seq.push_back(ControlStep{alloc.rows[schedule[j]], arcs[j]});
  return seq;
}

/// Schedule-optimization planner: samples random group schedules with random
/// positive starting arcs, keeps the shortest feasible, collision-free
/// solution across restarts.
inline PlanResult plan_numopt(const Scenario& sc, std::uint64_t seed,
                              const NumoptOptions& base_opts = {}) {
  sc.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const GroupAllocation alloc = allocate_groups(sc.params.n);
  Rng rng(seed);

  PlanResult best;
  bool timed_out = false;
  for (int attempt = 0; attempt < sc.planner.restarts; ++attempt) {
    if (elapsed() > sc.planner.max_time_s) {
      timed_out = true;
      break;
    }
    std::vector<int> schedule(static_cast<std::size_t>(sc.planner.schedule_length));
    std::vector<double> init(schedule.size());
    for (std::size_t j = 0; j < schedule.size(); ++j) {
      schedule[j] = rng.below(alloc.m);
      // Generous starting arcs matter: they seed enough heading diversity for
      // the solver to shape, where near-zero arcs strand it on plateaus.
      init[j] = rng.uniform(1.0, 4.0);
    }
    const ScheduleAttempt attempt_out = optimize_arcs(sc, alloc, schedule, init, base_opts);
    if (attempt == 0 || attempt_out.residual < best.best_residual)
      best.best_residual = attempt_out.residual;
    if (!attempt_out.feasible) continue;
    const ActivationSequence seq = schedule_to_sequence(alloc, schedule, attempt_out.arcs);
    const Trajectory traj =
        simulate(sc.start, seq, sc.params, sc.planner.subsample_resolution);
    if (!check_trajectory(traj, sc.env).ok) continue;
    if (!sc.at_goals(traj.back())) continue;
    const double pathlen = path_length(seq);
    if (best.status != PlanStatus::kSolved || pathlen < best.metrics.path_length) {
      best.status = PlanStatus::kSolved;
      best.sequence = seq;
      best.trajectory = traj;
      best.metrics.path_length = pathlen;
      best.metrics.execution_time = execution_time(seq, sc.params);
    }
  }
  best.metrics.runtime_s = elapsed();
  if (best.status != PlanStatus::kSolved)
    best.status = timed_out ? PlanStatus::kTimeout : PlanStatus::kInfeasible;
  else
    best.best_residual = 0.0;
  return best;
}

}  // namespace swarmplan

#endif  // SWARMPLAN_NUMOPT_HPP_

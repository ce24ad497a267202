#ifndef SWARMPLAN_PRIMITIVES_HPP_
#define SWARMPLAN_PRIMITIVES_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "swarmplan/allocation.hpp"
#include "swarmplan/angles.hpp"
#include "swarmplan/fields.hpp"
#include "swarmplan/simulate.hpp"
#include "swarmplan/types.hpp"

namespace swarmplan {

/// Default excursion bound for bilateral rotation composites.
inline constexpr double kDefaultEps = 0.5;

/// Arc amounts below this are dropped instead of emitted.
inline constexpr double kArcDropTol = 1e-12;

namespace detail {

inline double uniform_radius(const SwarmParams& params) {
  if (!params.r_overrides.empty()) {
    for (double ri : params.r_overrides)
      if (ri != params.r_overrides.front())
        throw std::invalid_argument(
            "this maneuver requires a uniform turning radius across the swarm");
    return params.r_overrides.front();
  }
  return params.r;
}

inline void check_group(const GroupAllocation& alloc, int group) {
  if (group < 0 || group >= alloc.m)
    throw std::invalid_argument("group index out of range: " + std::to_string(group + 1));
}

}  // namespace detail

/// Raw field step: members of `group` translate `arc`, the rest rotate.
inline ControlStep raw_field_step(const GroupAllocation& alloc, int group, double arc) {
  detail::check_group(alloc, group);
  return ControlStep{alloc.rows[group], arc};
}

/// Rotates every robot in place by theta (normalized to [0, 2*pi)).
inline ActivationSequence rotate_all(double theta, const SwarmParams& params) {
  const double r = detail::uniform_radius(params);
  double a = wrap_angle(theta);
  if (a >= kTwoPi - kAngleTol) a = 0.0;  // full-turn wrap noise
  if (a * r <= kArcDropTol) return {};
  return {ControlStep{0, a * r}};
}

/// Net rotation of all non-members of `group` by theta while members return
/// to their exact pose. Realized as repeated (translate d, rotate pi,
/// translate d, rotate pi) composites with member excursions bounded by eps.
inline ActivationSequence bilateral_rotation(int group, double theta, double eps,
                                             const GroupAllocation& alloc,
                                             const SwarmParams& params) {
  detail::check_group(alloc, group);
  if (!(eps > 0.0)) throw std::invalid_argument("excursion bound must be positive");
  const double r = detail::uniform_radius(params);
  double remaining = wrap_angle(theta);
  if (remaining >= kTwoPi - kAngleTol) remaining = 0.0;  // full-turn wrap noise
  ActivationSequence seq;
  while (remaining > kArcDropTol) {
    const double d = std::min(eps, remaining * r / 2.0);
    seq.push_back(raw_field_step(alloc, group, d));
    seq.push_back(ControlStep{0, kPi * r});
    seq.push_back(raw_field_step(alloc, group, d));
    seq.push_back(ControlStep{0, kPi * r});
    remaining -= 2.0 * d / r;
  }
  return seq;
}

/// Net translation of the members of `group` by d along their headings while
/// every other robot returns to its exact pose and no orientation changes.
/// Negative d is realized by flipping the whole swarm, translating |d|, and
/// flipping back, which restores all orientations.
inline ActivationSequence bilateral_translation(int group, double d, double eps,
                                                const GroupAllocation& alloc,
                                                const SwarmParams& params) {
  detail::check_group(alloc, group);
  const double r = detail::uniform_radius(params);
  if (std::fabs(d) <= kArcDropTol) return {};
  if (d < 0.0) {
    ActivationSequence seq{ControlStep{0, kPi * r}};
    append_sequence(seq, bilateral_translation(group, -d, eps, alloc, params));
    seq.push_back(ControlStep{0, kPi * r});
    return seq;
  }
  ActivationSequence seq{raw_field_step(alloc, group, d)};
  append_sequence(seq, bilateral_rotation(group, -d / r, eps, alloc, params));
  return seq;
}

/// Relative orientation targets: rotate each listed robot by its delta
/// (mod 2*pi) without any net position change.
struct OrientationTarget {
  int robot = 0;
  double delta = 0.0;
};

struct OrientationPlan {
  ActivationSequence sequence;
  std::vector<double> field_amounts;    // size m, each in [0, 2*pi)
  std::vector<double> robot_rotations;  // size n, net rotation mod 2*pi
};

namespace detail {

/// Row of the orientation influence matrix for one robot: rotation fields
/// h_i turn exactly the robots outside group i, the all-rotate field turns
/// everyone.
inline Eigen::RowVectorXd influence_row(const GroupAllocation& alloc, int robot) {
  Eigen::RowVectorXd row(alloc.m);
  for (int i = 0; i < alloc.m - 1; ++i) row(i) = alloc.member(i, robot) ? 0.0 : 1.0;
  row(alloc.m - 1) = 1.0;
  return row;
}

inline int matrix_rank(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-9);
  return static_cast<int>(qr.rank());
}

}  // namespace detail

inline OrientationPlan orientation_control(const std::vector<OrientationTarget>& targets,
                                           const GroupAllocation& alloc,
                                           const SwarmParams& params,
                                           double eps = kDefaultEps) {
  const int m = alloc.m;
  if (targets.empty() || static_cast<int>(targets.size()) > m)
    throw std::invalid_argument("orientation control takes between 1 and " + std::to_string(m) +
                                " targets");
  for (std::size_t a = 0; a < targets.size(); ++a) {
    if (targets[a].robot < 0 || targets[a].robot >= alloc.n)
      throw std::invalid_argument("orientation target robot out of range");
    for (std::size_t b = a + 1; b < targets.size(); ++b)
      if (targets[a].robot == targets[b].robot)
        throw std::invalid_argument("orientation target robots must be distinct");
  }

  const int t = static_cast<int>(targets.size());
  Eigen::MatrixXd a_sub(t, m);
  Eigen::VectorXd b(t);
  for (int i = 0; i < t; ++i) {
    a_sub.row(i) = detail::influence_row(alloc, targets[i].robot);
    b(i) = wrap_angle(targets[i].delta);
  }
  if (detail::matrix_rank(a_sub) < t) {
    // Identify targets whose rows fail to extend the span.
    std::vector<int> offenders;
    Eigen::MatrixXd acc(0, m);
    for (int i = 0; i < t; ++i) {
      Eigen::MatrixXd next(acc.rows() + 1, m);
      next << acc, a_sub.row(i);
      if (detail::matrix_rank(next) == acc.rows())
        offenders.push_back(targets[i].robot);
      else
        acc = next;
    }
    std::string msg = "orientation targets are not independently controllable; robots";
    for (int r : offenders) msg += " " + std::to_string(r + 1);
    msg += " depend on the earlier targets";
    throw RankDeficientError(msg, offenders);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd u = svd.solve(b);

  OrientationPlan plan;
  plan.field_amounts.resize(m);
  for (int i = 0; i < m; ++i) plan.field_amounts[i] = wrap_angle(u(i));
  for (int i = 0; i + 1 < m; ++i)
    append_sequence(plan.sequence,
                    bilateral_rotation(i, plan.field_amounts[i], eps, alloc, params));
  append_sequence(plan.sequence, rotate_all(plan.field_amounts[m - 1], params));
  plan.robot_rotations.resize(alloc.n);
  for (int j = 0; j < alloc.n; ++j) {
    double net = 0.0;
    const Eigen::RowVectorXd row = detail::influence_row(alloc, j);
    for (int i = 0; i < m; ++i) net += row(i) * plan.field_amounts[i];
    plan.robot_rotations[j] = wrap_angle(net);
  }
  return plan;
}

/// Absolute-heading wrapper: subtracts current headings from the goals.
inline OrientationPlan orientation_control_absolute(
    const SwarmState& state, const std::vector<OrientationTarget>& headings,
    const GroupAllocation& alloc, const SwarmParams& params, double eps = kDefaultEps) {
  std::vector<OrientationTarget> rel;
  rel.reserve(headings.size());
  for (const OrientationTarget& t : headings)
    rel.push_back({t.robot, wrap_angle(t.delta - state.orientations[t.robot])});
  return orientation_control(rel, alloc, params, eps);
}

/// Selects the translation group that isolates robot k: smallest member
/// count containing k, ties by lowest index.
inline int isolation_group(const GroupAllocation& alloc, int k) {
  int best = -1, best_size = std::numeric_limits<int>::max();
  for (int i = 0; i < alloc.m - 1; ++i) {
    if (!alloc.member(i, k)) continue;
    const int size = popcount_mask(alloc.rows[i]);
    if (size < best_size) {
      best = i;
      best_size = size;
    }
  }
  if (best < 0)
    throw std::invalid_argument("robot " + std::to_string(k + 1) +
                                " belongs to no translation group");
  return best;
}

/// Moves robot k by 2^T * d along `heading` while every other robot returns
/// to its initial position (their orientations are unconstrained); T is the
/// number of doubling rounds needed to cancel the other members of the
/// isolation group, two per round in ascending index order.
inline ActivationSequence isolate_translate(const SwarmState& state, int k, double d,
                                            double heading, const GroupAllocation& alloc,
                                            const SwarmParams& params,
                                            double eps = kDefaultEps) {
  if (k < 0 || k >= alloc.n) throw std::invalid_argument("robot index out of range");
  if (d < 0.0) {
    d = -d;
    heading = wrap_angle(heading + kPi);
  }
  ActivationSequence seq =
      orientation_control_absolute(state, {{k, heading}}, alloc, params, eps).sequence;
  if (d <= kArcDropTol) return seq;

  const int group = isolation_group(alloc, k);
  ActivationSequence stage = bilateral_translation(group, d, eps, alloc, params);
  std::vector<int> others;
  for (int j : alloc.group_members(group))
    if (j != k) others.push_back(j);

  for (std::size_t next = 0; next < others.size(); next += 2) {
    const std::vector<double> spins = net_rotation(stage, params);
    std::vector<OrientationTarget> targets;
    for (std::size_t o = next; o < std::min(next + 2, others.size()); ++o)
      targets.push_back({others[o], wrap_angle(kPi - spins[others[o]])});
    targets.push_back({k, 0.0});
    const ActivationSequence mid =
        orientation_control(targets, alloc, params, eps).sequence;
    ActivationSequence doubled = stage;
    append_sequence(doubled, mid);
    append_sequence(doubled, stage);
    stage = std::move(doubled);
  }
  append_sequence(seq, stage);
  return seq;
}

/// Doubling construction over pairwise-distinct turning radii: only the
/// all-translate and all-rotate fields are used, and every robot except k is
/// returned to its start by successive flip-and-replay rounds.
inline ActivationSequence distinct_radius_isolate(int k, double d, const SwarmParams& params) {
  params.validate();
  if (k < 0 || k >= params.n) throw std::invalid_argument("robot index out of range");
  if (!(d > 0.0)) throw std::invalid_argument("displacement must be positive");
  if (params.n > 1) {
    if (static_cast<int>(params.r_overrides.size()) != params.n)
      throw std::invalid_argument("distinct-radius isolation needs per-robot turning radii");
    for (int a = 0; a < params.n; ++a)
      for (int b = a + 1; b < params.n; ++b)
        if (params.r_overrides[a] == params.r_overrides[b])
          throw std::invalid_argument("turning radii must be pairwise distinct; robots " +
                                      std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                      " collide");
  }
  const std::uint64_t all = params.n >= 64 ? ~std::uint64_t{0}
                                           : ((std::uint64_t{1} << params.n) - 1);
  ActivationSequence seq{ControlStep{all, d}};
  for (int e = 0; e < params.n; ++e) {
    if (e == k) continue;
    const std::vector<double> spins = net_rotation(seq, params);
    const double base = wrap_angle(kPi - spins[e]);
    // Cancelling robot e flips it by pi before the replay. If that flip also
    // lands robot k's boundary rotation on pi, the replay negates k's own
    // progress; adding full turns of robot e keeps e's flip intact while
    // shifting k's rotation by 2*pi*r_e/r_k per turn. Odd integer radius
    // ratios make every choice land on pi, which no activation sequence of
    // this shape can avoid.
    const double re = params.radius_of(e);
    const double rk = params.radius_of(k);
    constexpr int kMaxExtraTurns = 64;
    constexpr double kPiMargin = 1e-6;
    int turns = 0;
    while (turns <= kMaxExtraTurns) {
      const double krot = wrap_angle(spins[k] + (base + kTwoPi * turns) * re / rk);
      if (std::fabs(krot - kPi) > kPiMargin) break;
      ++turns;
    }
    if (turns > kMaxExtraTurns)
      throw std::invalid_argument(
          "turning radii of robots " + std::to_string(k + 1) + " and " +
          std::to_string(e + 1) +
          " force every cancelling rotation to negate the isolated robot");
    const double arc = (base + kTwoPi * turns) * re;
    ActivationSequence doubled = seq;
    if (arc > kArcDropTol) doubled.push_back(ControlStep{0, arc});
    append_sequence(doubled, seq);
    seq = std::move(doubled);
  }
  return seq;
}

/// Robots net-translated by a field expression. A leaf moves the members of
/// its translating fields; a first-order bracket [rotation combo, g_i] moves
/// the members of group i whose net rotation coefficient under the combo is
/// nonzero.
inline std::vector<int> affected_robots(const BracketExpr& expr, const GroupAllocation& alloc) {
  auto member_union = [&](const LinearCombo& combo) {
    std::vector<int> out;
    for (const auto& [c, f] : combo) {
      if (c == 0 || f.kind == FieldKind::kRotate) continue;
      detail::check_group(alloc, f.index);
      for (int j : alloc.group_members(f.index))
        if (std::find(out.begin(), out.end(), j) == out.end()) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  if (expr.is_leaf()) return member_union(expr.combo);

  if (!expr.left->is_leaf() || !expr.right->is_leaf())
    throw std::invalid_argument("only first-order brackets are supported: " + expr.str());
  const LinearCombo& rot = expr.left->combo;
  const LinearCombo& trans = expr.right->combo;
  for (const auto& [c, f] : rot)
    if (c != 0 && f.kind == FieldKind::kTranslate)
      throw std::invalid_argument("bracket left side must be rotation-only: " + expr.str());
  int carrier = -1;
  for (const auto& [c, f] : trans) {
    if (c == 0) continue;
    if (f.kind == FieldKind::kRotate || carrier >= 0)
      throw std::invalid_argument("bracket right side must be a single translating field: " +
                                  expr.str());
    carrier = f.index;
  }
  if (carrier < 0)
    throw std::invalid_argument("bracket right side must be a single translating field: " +
                                expr.str());
  detail::check_group(alloc, carrier);

  std::vector<int> out;
  for (int j : alloc.group_members(carrier)) {
    int kappa = 0;
    for (const auto& [c, f] : rot) {
      if (c == 0) continue;
      detail::check_group(alloc, f.index);
      // Any rotation-side field turns exactly its non-members; the empty
      // all-rotate group therefore turns everyone.
      kappa += alloc.member(f.index, j) ? 0 : c;
    }
    if (kappa != 0) out.push_back(j);
  }
  return out;
}

struct PrimitiveOptions {
  double eps = kDefaultEps;
};

/// A compiled subgroup motion: `expr` names the realization, `compile` emits
/// the activation sequence that displaces exactly the subgroup.
struct Primitive {
  std::vector<int> subgroup;  // ascending, 0-based
  BracketExpr expr;
  int order = 1;
  int carrier = 0;            // translating group the realization rides on
  LinearCombo rotation;       // empty for order 1
  GroupAllocation alloc;
  SwarmParams params;
  PrimitiveOptions options;

  /// Emits the maneuver that displaces subgroup robot s by d along
  /// headings[s] (negative d flips the direction), returning every other
  /// robot to its starting position and restoring all orientations. Robots
  /// are re-aimed first where the rotation system has rank for them.
  ActivationSequence compile(const SwarmState& state, double d,
                             const std::vector<double>& headings) const {
    if (headings.size() != subgroup.size())
      throw std::invalid_argument("one target heading per subgroup robot required");
    const double mag = std::fabs(d);
    std::vector<OrientationTarget> wanted;
    for (std::size_t s = 0; s < subgroup.size(); ++s)
      wanted.push_back({subgroup[s], wrap_angle(headings[s] + (d < 0.0 ? kPi : 0.0))});

    // Greedy rank-permitting subset, ascending robot index.
    std::vector<OrientationTarget> aims;
    Eigen::MatrixXd acc(0, alloc.m);
    for (const OrientationTarget& t : wanted) {
      Eigen::MatrixXd next(acc.rows() + 1, alloc.m);
      next << acc, detail::influence_row(alloc, t.robot);
      if (detail::matrix_rank(next) > acc.rows()) {
        acc = next;
        aims.push_back(t);
      }
      if (acc.rows() == alloc.m) break;
    }
    ActivationSequence seq =
        orientation_control_absolute(state, aims, alloc, params, options.eps).sequence;
    if (mag <= kArcDropTol) return seq;

    if (order == 1) {
      append_sequence(seq, bilateral_translation(carrier, mag, options.eps, alloc, params));
      return seq;
    }
    const ActivationSequence spin = rotation_pi_sequence();
    append_sequence(seq, bilateral_translation(carrier, mag / 2.0, options.eps, alloc, params));
    append_sequence(seq, spin);
    append_sequence(seq, bilateral_translation(carrier, -mag / 2.0, options.eps, alloc, params));
    append_sequence(seq, spin);
    return seq;
  }

 private:
  /// Applies the rotation combo scaled to pi. A second application cancels
  /// every robot's net rotation because all coefficients are integers.
  ActivationSequence rotation_pi_sequence() const {
    ActivationSequence seq;
    for (const auto& [c, f] : rotation) {
      if (c == 0) continue;
      if (f.kind == FieldKind::kRotate)
        append_sequence(seq,
                        bilateral_rotation(f.index, wrap_angle(c * kPi), options.eps, alloc,
                                           params));
      else
        append_sequence(seq, rotate_all(wrap_angle(c * kPi), params));
    }
    return seq;
  }
};

namespace detail {

inline bool subset_of_group(const std::vector<int>& subgroup, const GroupAllocation& alloc,
                            int group) {
  for (int j : subgroup)
    if (!alloc.member(group, j)) return false;
  return true;
}

/// Net rotation coefficient of robot j under a rotation combo.
inline int combo_kappa(const LinearCombo& combo, const GroupAllocation& alloc, int j) {
  int kappa = 0;
  for (const auto& [c, f] : combo)
    if (c != 0 && !alloc.member(f.index, j)) kappa += c;
  return kappa;
}

/// Positive terms first; keeps printed combos in the conventional shape.
inline LinearCombo canonical_combo(LinearCombo combo) {
  std::stable_partition(combo.begin(), combo.end(),
                        [](const std::pair<int, FieldRef>& t) { return t.first > 0; });
  return combo;
}

}  // namespace detail

/// Finds the lowest-order realization whose affected set equals `subgroup`:
/// a raw translation group, then brackets with a single rotation field, then
/// brackets with multi-field rotation combinations. Throws NoPrimitiveError
/// with the nearest realizable supersets when nothing matches.
inline Primitive compile_primitive(std::vector<int> subgroup, const GroupAllocation& alloc,
                                   const SwarmParams& params,
                                   PrimitiveOptions options = {}) {
  if (subgroup.empty()) throw std::invalid_argument("subgroup must not be empty");
  std::sort(subgroup.begin(), subgroup.end());
  for (std::size_t i = 0; i < subgroup.size(); ++i) {
    if (subgroup[i] < 0 || subgroup[i] >= alloc.n)
      throw std::invalid_argument("subgroup robot out of range");
    if (i > 0 && subgroup[i] == subgroup[i - 1])
      throw std::invalid_argument("subgroup robots must be distinct");
  }

  const int m = alloc.m;
  std::vector<std::vector<int>> realizable;
  auto note = [&realizable](const std::vector<int>& set) {
    if (std::find(realizable.begin(), realizable.end(), set) == realizable.end())
      realizable.push_back(set);
  };

  Primitive p;
  p.subgroup = subgroup;
  p.alloc = alloc;
  p.params = params;
  p.options = options;

  // Stage 1: whole translation groups.
  for (int i = 0; i < m - 1; ++i) {
    const std::vector<int> members = alloc.group_members(i);
    note(members);
    if (members == subgroup) {
      p.expr = BracketExpr::leaf(FieldRef{FieldKind::kTranslate, i});
      p.order = p.expr.order();
      p.carrier = i;
      return p;
    }
  }

  const FieldRef all_rotate{FieldKind::kRaw, m - 1};
  Primitive found;
  bool have = false;

  auto try_combo = [&](int carrier, const LinearCombo& combo) {
    std::vector<int> affected;
    for (int j : alloc.group_members(carrier)) {
      const int kappa = detail::combo_kappa(combo, alloc, j);
      if (kappa < -1 || kappa > 1) return;  // a pi-turn would alias to zero
      if (kappa != 0) affected.push_back(j);
    }
    if (affected.empty()) return;
    note(affected);
    if (!have && affected == subgroup) {
      found = p;
      found.expr = BracketExpr::bracket(
          BracketExpr::leaf(detail::canonical_combo(combo)),
          BracketExpr::leaf(FieldRef{FieldKind::kTranslate, carrier}));
      found.order = found.expr.order();
      found.carrier = carrier;
      found.rotation = detail::canonical_combo(combo);
      have = true;
    }
  };

  // Stage 2: one rotation field, optionally offset by the all-rotate field.
  const std::pair<int, int> stage2[] = {{1, 0}, {-1, 1}, {1, -1}, {-1, 0}, {1, 1}, {-1, -1}};
  for (int i = 0; i < m - 1 && !have; ++i) {
    if (!detail::subset_of_group(subgroup, alloc, i)) continue;
    for (int j = 0; j < m - 1 && !have; ++j) {
      for (const auto& [ch, cf] : stage2) {
        LinearCombo combo{{ch, FieldRef{FieldKind::kRotate, j}}};
        if (cf != 0) combo.push_back({cf, all_rotate});
        try_combo(i, combo);
        if (have) break;
      }
    }
  }

  // Stage 3: multi-field rotation combinations with coefficients in {-1,+1}.
  for (int i = 0; i < m - 1 && !have; ++i) {
    if (!detail::subset_of_group(subgroup, alloc, i)) continue;
    for (int size = 2; size <= m - 1 && !have; ++size) {
      std::vector<int> pick(size);
      for (int v = 0; v < size; ++v) pick[v] = v;
      while (true) {
        for (int signs = 0; signs < (1 << size) && !have; ++signs) {
          for (int cf : {0, -1, 1}) {
            LinearCombo combo;
            for (int v = 0; v < size; ++v)
              combo.push_back({(signs >> v) & 1 ? -1 : 1,
                               FieldRef{FieldKind::kRotate, pick[v]}});
            if (cf != 0) combo.push_back({cf, all_rotate});
            try_combo(i, combo);
            if (have) break;
          }
        }
        if (have) break;
        int v = size - 1;
        while (v >= 0 && pick[v] == m - 2 - (size - 1 - v)) --v;
        if (v < 0) break;
        ++pick[v];
        for (int w = v + 1; w < size; ++w) pick[w] = pick[w - 1] + 1;
      }
    }
  }
  if (have) return found;

  // Nothing matches: report the nearest realizable supersets.
  std::vector<std::vector<int>> supersets;
  for (const std::vector<int>& set : realizable)
    if (std::includes(set.begin(), set.end(), subgroup.begin(), subgroup.end()))
      supersets.push_back(set);
  std::sort(supersets.begin(), supersets.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  if (supersets.size() > 5) supersets.resize(5);
  auto fmt = [](const std::vector<int>& set) {
    std::string s = "{";
    for (std::size_t i = 0; i < set.size(); ++i)
      s += (i ? "," : "") + std::to_string(set[i] + 1);
    return s + "}";
  };
  std::string msg = "no primitive realizes subgroup " + fmt(subgroup);
  if (supersets.empty()) {
    msg += "; no realizable superset exists";
  } else {
    msg += "; nearest realizable supersets:";
    for (const auto& s : supersets) msg += " " + fmt(s);
  }
  throw NoPrimitiveError(msg, supersets);
}

}  // namespace swarmplan

#endif  // SWARMPLAN_PRIMITIVES_HPP_

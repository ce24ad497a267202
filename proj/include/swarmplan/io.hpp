#ifndef SWARMPLAN_IO_HPP_
#define SWARMPLAN_IO_HPP_

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmplan/allocation.hpp"
#include "swarmplan/fields.hpp"
#include "swarmplan/scenario.hpp"
#include "swarmplan/types.hpp"

namespace swarmplan {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
}

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline Vec2 vec2_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("expected a two-element [x, y] array");
  return Vec2{j[0].get<double>(), j[1].get<double>()};
}

inline nlohmann::json vec2_to(const Vec2& v) { return nlohmann::json::array({v.x, v.y}); }

inline SwarmState state_from(const nlohmann::json& j) {
  SwarmState s;
  for (const auto& p : j.at("positions")) s.positions.push_back(vec2_from(p));
  for (const auto& o : j.at("orientations")) s.orientations.push_back(o.get<double>());
  if (s.positions.size() != s.orientations.size())
    throw ParseError("positions and orientations disagree on the robot count");
  return s;
}

inline nlohmann::json state_to(const SwarmState& s) {
  nlohmann::json j;
  j["positions"] = nlohmann::json::array();
  for (const Vec2& p : s.positions) j["positions"].push_back(vec2_to(p));
  j["orientations"] = s.orientations;
  return j;
}

}  // namespace detail

/// Reads a swarm state from a JSON document with "positions" and
/// "orientations" arrays.
inline SwarmState load_state(const std::string& path) {
  try {
    const nlohmann::json j = nlohmann::json::parse(detail::read_file(path));
    return detail::state_from(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void save_state(const std::string& path, const SwarmState& state) {
  detail::write_file(path, detail::state_to(state).dump(2) + "\n");
}

/// Reads a scenario file. Robot and subgroup indices in the file are 1-based;
/// the returned structure uses 0-based indices throughout.
inline Scenario load_scenario(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    Scenario sc;
    sc.params.n = j.at("n").get<int>();
    sc.params.r = j.at("r").get<double>();
    sc.params.u_nominal = j.at("u_nominal").get<double>();
    if (j.contains("r_overrides"))
      sc.params.r_overrides = j["r_overrides"].get<std::vector<double>>();
    sc.start = detail::state_from(j.at("starts"));
    for (const auto& g : j.at("goals")) sc.goals.push_back(detail::vec2_from(g));
    sc.goal_radius = j.at("goal_radius").get<double>();

    const nlohmann::json& env = j.at("env");
    const auto& b = env.at("bounds");
    if (!b.is_array() || b.size() != 4)
      throw ParseError("env.bounds must be [xmin, ymin, xmax, ymax]");
    sc.env.bounds = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                     b[3].get<double>()};
    for (const auto& o : env.value("obstacles", nlohmann::json::array())) {
      Obstacle obs;
      obs.center = detail::vec2_from(o.at("center"));
      obs.radius = o.at("radius").get<double>();
      sc.env.obstacles.push_back(obs);
    }
    sc.env.robot_radius = env.value("robot_radius", 0.0);
    sc.env.min_separation = env.value("min_separation", 0.0);

    const nlohmann::json pc = j.value("planner_config", nlohmann::json::object());
    PlannerConfig& cfg = sc.planner;
    cfg.schedule_length = pc.value("schedule_length", cfg.schedule_length);
    cfg.restarts = pc.value("restarts", cfg.restarts);
    cfg.step_arc_max = pc.value("step_arc_max", cfg.step_arc_max);
    cfg.goal_bias = pc.value("goal_bias", cfg.goal_bias);
    cfg.max_nodes = pc.value("max_nodes", cfg.max_nodes);
    cfg.max_time_s = pc.value("max_time_s", cfg.max_time_s);
    cfg.eps = pc.value("eps", cfg.eps);
    cfg.subsample_resolution = pc.value("subsample_resolution", cfg.subsample_resolution);
    for (const auto& sg : pc.value("subgroups", nlohmann::json::array())) {
      std::vector<int> members;
      for (const auto& r : sg) members.push_back(r.get<int>() - 1);
      cfg.subgroups.push_back(members);
    }

    sc.validate();
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline void save_scenario(const std::string& path, const Scenario& sc) {
  nlohmann::json j;
  j["n"] = sc.params.n;
  j["r"] = sc.params.r;
  j["u_nominal"] = sc.params.u_nominal;
  if (!sc.params.r_overrides.empty()) j["r_overrides"] = sc.params.r_overrides;
  j["starts"] = detail::state_to(sc.start);
  j["goals"] = nlohmann::json::array();
  for (const Vec2& g : sc.goals) j["goals"].push_back(detail::vec2_to(g));
  j["goal_radius"] = sc.goal_radius;
  j["env"]["bounds"] = {sc.env.bounds.xmin, sc.env.bounds.ymin, sc.env.bounds.xmax,
                        sc.env.bounds.ymax};
  j["env"]["obstacles"] = nlohmann::json::array();
  for (const Obstacle& o : sc.env.obstacles)
    j["env"]["obstacles"].push_back(
        {{"center", detail::vec2_to(o.center)}, {"radius", o.radius}});
  j["env"]["robot_radius"] = sc.env.robot_radius;
  if (sc.env.min_separation > 0.0) j["env"]["min_separation"] = sc.env.min_separation;
  nlohmann::json pc;
  pc["schedule_length"] = sc.planner.schedule_length;
  pc["restarts"] = sc.planner.restarts;
  pc["step_arc_max"] = sc.planner.step_arc_max;
  pc["goal_bias"] = sc.planner.goal_bias;
  pc["max_nodes"] = sc.planner.max_nodes;
  pc["max_time_s"] = sc.planner.max_time_s;
  pc["eps"] = sc.planner.eps;
  pc["subsample_resolution"] = sc.planner.subsample_resolution;
  pc["subgroups"] = nlohmann::json::array();
  for (const std::vector<int>& sg : sc.planner.subgroups) {
    nlohmann::json members = nlohmann::json::array();
    for (int r : sg) members.push_back(r + 1);
    pc["subgroups"].push_back(members);
  }
  j["planner_config"] = pc;
  detail::write_file(path, j.dump(2) + "\n");
}

/// Writes an activation sequence as one step per line: an n-character 0/1
/// activation pattern (first character = robot 1) followed by the arc.
inline std::string format_sequence(const ActivationSequence& seq, int n) {
  std::string out;
  for (const ControlStep& s : seq) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if (s.active(i)) bits[static_cast<std::size_t>(i)] = '1';
    out += bits + " " + detail::fmt_double(s.arc) + "\n";
  }
  return out;
}

inline void save_sequence(const std::string& path, const ActivationSequence& seq, int n) {
  detail::write_file(path, format_sequence(seq, n));
}

/// Reads a sequence file. Each non-empty line is "<pattern> <arc>": a pattern
/// token of exactly n characters over {0,1} selects robots directly (first
/// character = robot 1); any other integer token is a 1-based group index
/// resolved through the canonical allocation for n robots, where group m
/// activates nobody. The n-character rule wins when both readings apply.
inline ActivationSequence parse_sequence(const std::string& text, int n) {
  const GroupAllocation alloc = allocate_groups(n);
  ActivationSequence seq;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto head = line.find_first_not_of(" \t\r");
    if (head == std::string::npos) continue;
    if (line[head] == '#') continue;
    std::istringstream fields(line);
    std::string token;
    double arc = 0.0;
    if (!(fields >> token >> arc))
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected \"<pattern> <arc>\", got: " + line);
    std::string trailing;
    if (fields >> trailing)
      throw ParseError("line " + std::to_string(lineno) + ": unexpected trailing token \"" +
                       trailing + "\"");
    if (arc < 0.0)
      throw ParseError("line " + std::to_string(lineno) + ": arcs must be non-negative");

    std::uint64_t mask = 0;
    const bool bitshape =
        token.size() == static_cast<std::size_t>(n) &&
        std::all_of(token.begin(), token.end(), [](char c) { return c == '0' || c == '1'; });
    if (bitshape) {
      for (int i = 0; i < n; ++i)
        if (token[static_cast<std::size_t>(i)] == '1') mask |= std::uint64_t{1} << i;
    } else {
      int group = 0;
      try {
        std::size_t used = 0;
        group = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": pattern token \"" + token +
                         "\" is neither an activation pattern of length " +
                         std::to_string(n) + " nor a group index");
      }
      if (group < 1 || group > alloc.m)
        throw ParseError("line " + std::to_string(lineno) + ": group index " + token +
                         " out of range 1.." + std::to_string(alloc.m));
      mask = alloc.rows[group - 1];
    }
    seq.push_back(ControlStep{mask, arc});
  }
  return seq;
}

inline ActivationSequence load_sequence(const std::string& path, int n) {
  try {
    return parse_sequence(detail::read_file(path), n);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Writes compiled subgroup primitives, one per line, with 1-based robot
/// indices: "subgroup=4,5 expr=[h2,g1] order=2".
inline std::string format_primitive_line(const std::vector<int>& subgroup,
                                         const BracketExpr& expr, int order) {
  std::string out = "subgroup=";
  for (std::size_t i = 0; i < subgroup.size(); ++i)
    out += (i ? "," : "") + std::to_string(subgroup[i] + 1);
  out += " expr=" + expr.str() + " order=" + std::to_string(order);
  return out;
}

/// One benchmark run for the metrics table.
struct MetricRow {
  std::string planner;
  std::uint64_t seed = 0;
  PlanStatus status = PlanStatus::kInfeasible;
  double runtime_s = 0.0;
  int tree_nodes = 0;
  double path_length = 0.0;
  double execution_time = 0.0;
};

namespace detail {

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace detail

/// Renders benchmark rows as CSV, followed by one mean and one median row
/// per (planner, status) pair in first-appearance order; aggregate rows carry
/// the label in the seed column.
inline std::string format_metrics_csv(const std::vector<MetricRow>& rows) {
  std::string out = "planner,seed,status,runtime_s,rrt_nodes,path_length,execution_time\n";
  auto emit = [&out](const std::string& planner, const std::string& seed,
                     const std::string& status, double runtime, double nodes,
                     double pathlen, double exec) {
    out += planner + "," + seed + "," + status + "," + detail::fmt_double(runtime) + "," +
           detail::fmt_double(nodes) + "," + detail::fmt_double(pathlen) + "," +
           detail::fmt_double(exec) + "\n";
  };
  for (const MetricRow& r : rows)
    emit(r.planner, std::to_string(r.seed), to_string(r.status), r.runtime_s,
         static_cast<double>(r.tree_nodes), r.path_length, r.execution_time);

  std::vector<std::pair<std::string, PlanStatus>> groups;
  for (const MetricRow& r : rows) {
    const std::pair<std::string, PlanStatus> key{r.planner, r.status};
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
  }
  for (const auto& [planner, status] : groups) {
    std::vector<double> runtime, nodes, pathlen, exec;
    for (const MetricRow& r : rows)
      if (r.planner == planner && r.status == status) {
        runtime.push_back(r.runtime_s);
        nodes.push_back(static_cast<double>(r.tree_nodes));
        pathlen.push_back(r.path_length);
        exec.push_back(r.execution_time);
      }
    auto mean = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    emit(planner, "mean", to_string(status), mean(runtime), mean(nodes), mean(pathlen),
         mean(exec));
    emit(planner, "median", to_string(status), detail::median_of(runtime),
         detail::median_of(nodes), detail::median_of(pathlen), detail::median_of(exec));
  }
  return out;
}

inline void save_metrics_csv(const std::string& path, const std::vector<MetricRow>& rows) {
  detail::write_file(path, format_metrics_csv(rows));
}

}  // namespace swarmplan

#endif  // SWARMPLAN_IO_HPP_

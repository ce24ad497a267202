#ifndef SWARMPLAN_BATCH_HPP_
#define SWARMPLAN_BATCH_HPP_

#include <algorithm>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmplan/io.hpp"
#include "swarmplan/numopt.hpp"
#include "swarmplan/planners.hpp"
#include "swarmplan/rrt.hpp"
#include "swarmplan/scenario.hpp"
#include "swarmplan/svg.hpp"

namespace swarmplan {

inline const std::vector<std::string>& planner_ids() {
  static const std::vector<std::string> ids = {"numopt",       "rrt",
                                               "rrt-rot",      "pure-control",
                                               "subgroup-parallel", "subgroup-sequential"};
  return ids;
}

/// Dispatches one planner by its configuration id.
inline PlanResult run_planner(const Scenario& sc, const std::string& id, std::uint64_t seed) {
  if (id == "numopt") return plan_numopt(sc, seed);
  if (id == "rrt") return plan_rrt(sc, RrtMode::kOriginal, seed);
  if (id == "rrt-rot") return plan_rrt(sc, RrtMode::kWithRotation, seed);
  if (id == "pure-control") return plan_pure_control(sc, seed);
  if (id == "subgroup-parallel") return plan_subgroup_parallel(sc, seed);
  if (id == "subgroup-sequential") return plan_subgroup_sequential(sc, seed);
  throw ValidationError("unknown planner id: " + id);
}

/// A benchmark campaign: one scenario, a planner list, a seed list.
struct BatchSpec {
  std::string scenario_path;
  std::vector<std::string> planners;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "batch-out";
  int repeat = 1;
  // "wall" records measured runtimes; "none" zeroes them so that reruns of
  // the same spec produce byte-identical outputs.
  std::string runtime_mode = "wall";

  void validate() const {
    if (scenario_path.empty()) throw ValidationError("batch spec needs a scenario path");
    if (planners.empty()) throw ValidationError("batch spec needs at least one planner");
    if (seeds.empty()) throw ValidationError("batch spec needs at least one seed");
    if (repeat < 1) throw ValidationError("repeat count must be positive");
    if (runtime_mode != "wall" && runtime_mode != "none")
      throw ValidationError("runtime_mode must be wall or none");
    for (const std::string& p : planners)
      if (std::find(planner_ids().begin(), planner_ids().end(), p) == planner_ids().end())
        throw ValidationError("unknown planner id: " + p);
  }
};

inline BatchSpec load_batch_spec(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse batch spec " + path + ": " + e.what());
  }
  BatchSpec spec;
  try {
    spec.scenario_path = j.at("scenario").get<std::string>();
    for (const auto& p : j.at("planners")) spec.planners.push_back(p.get<std::string>());
    for (const auto& s : j.at("seeds")) spec.seeds.push_back(s.get<std::uint64_t>());
    if (j.contains("out_dir")) spec.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("repeat")) spec.repeat = j["repeat"].get<int>();
    if (j.contains("runtime_mode")) spec.runtime_mode = j["runtime_mode"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("batch spec " + path + " is missing a field: " + e.what());
  }
  spec.validate();
  return spec;
}

/// Runs every (planner, seed, repeat) cell in a fixed order — planner-major,
/// then seed, then repeat — writing per-run sequence and plot artifacts plus
/// an aggregate CSV to the output directory. A run that throws is recorded as
/// an infeasible row; the batch always completes.
inline std::vector<MetricRow> run_batch(const BatchSpec& spec) {
  spec.validate();
  const Scenario sc = load_scenario(spec.scenario_path);
  std::filesystem::create_directories(spec.out_dir);

  std::vector<MetricRow> rows;
  for (const std::string& planner : spec.planners) {
    for (const std::uint64_t seed : spec.seeds) {
      for (int rep = 0; rep < spec.repeat; ++rep) {
        MetricRow row;
        row.planner = planner;
        row.seed = seed;
        std::string tag = spec.out_dir + "/" + planner + "_seed" + std::to_string(seed);
        if (spec.repeat > 1) tag += "_r" + std::to_string(rep + 1);
        try {
          const PlanResult res = run_planner(sc, planner, seed);
          row.status = res.status;
          row.runtime_s = spec.runtime_mode == "wall" ? res.metrics.runtime_s : 0.0;
          row.tree_nodes = res.metrics.tree_nodes;
          row.path_length = res.metrics.path_length;
          row.execution_time = res.metrics.execution_time;
          save_sequence(tag + ".seq", res.sequence, sc.params.n);
          if (!res.trajectory.samples.empty())
            emit_plot(res.trajectory, sc.env, sc.goals, tag + ".svg");
        } catch (const std::exception&) {
          row.status = PlanStatus::kInfeasible;
        }
        rows.push_back(row);
      }
    }
  }
  save_metrics_csv(spec.out_dir + "/metrics.csv", rows);
  return rows;
}

}  // namespace swarmplan

#endif  // SWARMPLAN_BATCH_HPP_

// Command-line front end: single-run planning, batch benchmarking, subgroup
// primitive compilation, and independent plan verification.
//
// Exit codes: 0 solved/verified, 2 timeout, 3 infeasible (or no primitive /
// failed verification), 4 validation or usage error.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmplan/batch.hpp"
#include "swarmplan/io.hpp"
#include "swarmplan/numopt.hpp"
#include "swarmplan/planners.hpp"
#include "swarmplan/rrt.hpp"
#include "swarmplan/svg.hpp"
#include "swarmplan/verify.hpp"

namespace {

using namespace swarmplan;

int status_code(PlanStatus s) {
  switch (s) {
    case PlanStatus::kSolved: return 0;
    case PlanStatus::kTimeout: return 2;
    case PlanStatus::kInfeasible: return 3;
  }
  return 3;
}

std::vector<int> parse_subgroup(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) {
        out.push_back(std::stoi(cur) - 1);  // file convention is 1-based
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (out.empty()) throw ValidationError("subgroup list is empty");
  return out;
}

int cmd_plan(const std::string& scenario_path, const std::string& planner,
             std::uint64_t seed, const std::string& out_dir, bool do_verify) {
  const Scenario sc = load_scenario(scenario_path);
  const PlanResult res = run_planner(sc, planner, seed);

  std::filesystem::create_directories(out_dir);
  const std::string tag = out_dir + "/" + planner + "_seed" + std::to_string(seed);
  save_sequence(tag + ".seq", res.sequence, sc.params.n);
  if (!res.trajectory.samples.empty()) emit_plot(res.trajectory, sc.env, sc.goals, tag + ".svg");
  std::vector<MetricRow> rows{{planner, seed, res.status, res.metrics.runtime_s,
                               res.metrics.tree_nodes, res.metrics.path_length,
                               res.metrics.execution_time}};
  save_metrics_csv(tag + ".csv", rows);

  std::printf("status=%s runtime_s=%.3f tree_nodes=%d path_length=%.3f execution_time=%.3f\n",
              to_string(res.status), res.metrics.runtime_s, res.metrics.tree_nodes,
              res.metrics.path_length, res.metrics.execution_time);
  if (res.status == PlanStatus::kInfeasible)
    std::printf("best_residual=%.6g\n", res.best_residual);
  std::printf("artifacts: %s.seq %s.csv%s\n", tag.c_str(), tag.c_str(),
              res.trajectory.samples.empty() ? "" : (" " + tag + ".svg").c_str());

  if (do_verify && res.status == PlanStatus::kSolved) {
    const VerifyReport rep = verify_plan(sc, res.sequence);
    std::printf("verify: %s%s%s\n", rep.ok ? "ok" : "FAILED", rep.ok ? "" : " — ",
                rep.ok ? "" : rep.detail.c_str());
    if (!rep.ok) return 3;
  }
  return status_code(res.status);
}

int cmd_bench(const std::string& spec_path, const std::string& out_override) {
  BatchSpec spec = load_batch_spec(spec_path);
  if (!out_override.empty()) spec.out_dir = out_override;
  const std::vector<MetricRow> rows = run_batch(spec);

  for (const std::string& planner : spec.planners) {
    int solved = 0, total = 0;
    for (const MetricRow& r : rows)
      if (r.planner == planner) {
        ++total;
        solved += r.status == PlanStatus::kSolved ? 1 : 0;
      }
    std::printf("%s: solved %d of %d\n", planner.c_str(), solved, total);
  }
  std::printf("wrote %s/metrics.csv (%zu rows)\n", spec.out_dir.c_str(), rows.size());
  return 0;
}

int cmd_primitive(const std::string& subgroup_text, int n, double d,
                  const std::string& out_path) {
  const std::vector<int> subgroup = parse_subgroup(subgroup_text);
  SwarmParams params;
  params.n = n;
  const GroupAllocation alloc = allocate_groups(n);
  const Primitive prim = compile_primitive(subgroup, alloc, params);
  std::printf("%s\n", format_primitive_line(prim.subgroup, prim.expr, prim.order).c_str());

  // Compile the maneuver for a canonical spread-out state, everyone facing +x.
  SwarmState state;
  for (int i = 0; i < n; ++i) {
    state.positions.push_back(Vec2{0.0, 3.0 * i});
    state.orientations.push_back(0.0);
  }
  const std::vector<double> headings(prim.subgroup.size(), 0.0);
  const ActivationSequence seq = prim.compile(state, d, headings);
  std::printf("steps=%zu path_length=%.3f execution_time=%.3f\n", seq.size(), path_length(seq),
              execution_time(seq, params));
  if (!out_path.empty()) {
    save_sequence(out_path, seq, n);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_verify(const std::string& scenario_path, const std::string& sequence_path) {
  const Scenario sc = load_scenario(scenario_path);
  const ActivationSequence seq = load_sequence(sequence_path, sc.params.n);
  const VerifyReport rep = verify_plan(sc, seq);
  std::printf("verify: %s%s%s\n", rep.ok ? "ok" : "FAILED", rep.ok ? "" : " — ",
              rep.ok ? "" : rep.detail.c_str());
  return rep.ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic group-control swarm planning toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, planner, out_dir, spec_path, subgroup_text, sequence_path,
      out_path;
  std::uint64_t seed = 1;
  int n = 6;
  double d = 1.0;
  bool do_verify = false;

  CLI::App* plan = app.add_subcommand("plan", "Plan one scenario with one planner");
  plan->add_option("--scenario", scenario_path, "Scenario file")->required();
  plan->add_option("--planner", planner, "Planner id")->required();
  plan->add_option("--seed", seed, "RNG seed");
  plan->add_option("--out", out_dir, "Output directory")->required();
  plan->add_flag("--verify", do_verify, "Independently replay and re-check the result");

  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark batch");
  bench->add_option("--spec", spec_path, "Batch spec file (JSON)")->required();
  bench->add_option("--out", out_dir, "Output directory override");

  CLI::App* primitive = app.add_subcommand("primitive", "Compile a subgroup maneuver");
  primitive->add_option("--subgroup", subgroup_text, "1-based robot ids, comma-separated")
      ->required();
  primitive->add_option("--n", n, "Swarm size")->required();
  primitive->add_option("--d", d, "Displacement");
  primitive->add_option("--out", out_path, "Sequence output file");

  CLI::App* verify = app.add_subcommand("verify", "Replay a saved sequence against a scenario");
  verify->add_option("--scenario", scenario_path, "Scenario file")->required();
  verify->add_option("--sequence", sequence_path, "Sequence file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (*plan) return cmd_plan(scenario_path, planner, seed, out_dir, do_verify);
    if (*bench) return cmd_bench(spec_path, out_dir);
    if (*primitive) return cmd_primitive(subgroup_text, n, d, out_path);
    if (*verify) return cmd_verify(scenario_path, sequence_path);
  } catch (const NoPrimitiveError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 4;
}

// pmchemo: partial-moment chemotaxis solver suite.
//
// Subcommands:
//   run            advance a benchmark scenario and write snapshot CSVs
//   table build    precompute a minimum-entropy closure table
//   compare        per-snapshot density distance between two run directories
//   list-scenarios print scenario/model ids

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "pmchemo/errors.hpp"
#include "pmchemo/io.hpp"
#include "pmchemo/runner.hpp"
#include "pmchemo/tables.hpp"

using namespace pmchemo;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& model_override, double dx_override, double tfinal_override) {
  ScenarioConfig config = parse_config_file(config_path);
  if (!model_override.empty()) config.model = model_from_string(model_override);
  if (dx_override > 0.0) {
    config.grid.nx = std::max(4, static_cast<int>(std::lround(
                                      (config.grid.x_max - config.grid.x_min) / dx_override)));
    if (config.grid.dim == 2) {
      config.grid.ny = std::max(4, static_cast<int>(std::lround(
                                        (config.grid.y_max - config.grid.y_min) / dx_override)));
    }
  }
  if (tfinal_override >= 0.0) {
    config.t_final = tfinal_override;
    config.snapshot_times = {0.0, config.t_final / 4, config.t_final / 2,
                             3 * config.t_final / 4, config.t_final};
  }
  // re-validate after overrides
  config = parse_config_text(config_to_text(config));

  if (!config.params.turning_kernel_ok(config.grid.dim)) {
    std::fprintf(stderr,
                 "warning: lambda < C_V*alpha*(s+1); the turning kernel is not "
                 "sign-definite for these parameters\n");
  }
  RunResult result = run(config);
  write_run(out_dir, config, result);
  std::printf("scenario %s model %s: %ld steps, dt=%.6g, %zu snapshots\n",
              to_string(config.scenario), to_string(config.model), result.steps, result.dt,
              result.snapshots.size());
  std::printf("projection activations: %ld (mass delta %.3e)\n", result.projections,
              result.projected_mass);
  std::printf("mass: initial %.12g final %.12g\n", result.initial_mass, result.final_mass);
  if (result.max_chemo_iterations > 0) {
    std::printf("chemo solver: max %ld iterations, max residual %.3e\n",
                result.max_chemo_iterations, result.max_chemo_residual);
  }
  std::printf("wall time: %.3f s\n", result.wall_seconds);
  std::printf("output written to %s\n", out_dir.c_str());
  return 0;
}

int cmd_table_build(const std::string& kind, const std::string& out, int n, double bmax) {
  ClosureTable table;
  if (kind == "half") {
    table = build_half_table(n > 0 ? n : kHalfTableN, bmax > 0 ? bmax : kHalfTableBMax);
  } else if (kind == "quarter") {
    table = build_quarter_table(n > 0 ? n : kQuarterTableN, bmax > 0 ? bmax : kQuarterTableBMax);
  } else if (kind == "m1_1d") {
    table = build_m1_line_table(n > 0 ? n : kM1LineTableN, bmax > 0 ? bmax : kM1LineTableBMax);
  } else if (kind == "m1_2d") {
    table = build_m1_disk_table(n > 0 ? n : kM1DiskTableN, bmax > 0 ? bmax : kM1DiskTableBMax);
  } else {
    throw ValidationError("unknown table kind: " + kind);
  }
  save_table(out, table);
  std::printf("wrote %s table to %s\n", kind.c_str(), out.c_str());
  return 0;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b, const std::string& norm) {
  NormP p;
  if (norm == "l1") {
    p = NormP::L1;
  } else if (norm == "l2") {
    p = NormP::L2;
  } else if (norm == "linf") {
    p = NormP::LInf;
  } else {
    throw ValidationError("unknown norm: " + norm);
  }
  auto rows = compare_runs(dir_a, dir_b, p);
  std::fputs(format_compare_report(rows, p).c_str(), stdout);
  return 0;
}

int cmd_list_scenarios() {
  std::printf("scenario            dim  models\n");
  for (ScenarioId id : all_scenarios()) {
    std::string models;
    for (ModelId m : all_models()) {
      if (model_dim(m) == scenario_dim(id)) {
        if (!models.empty()) models += ", ";
        models += to_string(m);
      }
    }
    std::printf("%-18s  %d    %s\n", to_string(id), scenario_dim(id), models.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial-moment chemotaxis solvers"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run a scenario and write snapshots");
  std::string config_path, out_dir, model_override;
  double dx_override = -1.0, tfinal_override = -1.0;
  run_cmd->add_option("--config", config_path, "config file (JSON)")->required();
  run_cmd->add_option("--out", out_dir, "output directory")->required();
  run_cmd->add_option("--model", model_override, "override the config's model id");
  run_cmd->add_option("--dx", dx_override, "override the grid spacing");
  run_cmd->add_option("--tfinal", tfinal_override, "override the final time");

  auto* table_cmd = app.add_subcommand("table", "closure table utilities");
  auto* build_cmd = table_cmd->add_subcommand("build", "build and save a closure table");
  std::string kind, table_out;
  int table_n = -1;
  double table_bmax = -1.0;
  build_cmd->add_option("--kind", kind, "half | quarter | m1_1d | m1_2d")->required();
  build_cmd->add_option("--out", table_out, "output file")->required();
  build_cmd->add_option("--n", table_n, "sample count (default per kind)");
  build_cmd->add_option("--bmax", table_bmax, "multiplier range (default per kind)");

  auto* compare_cmd = app.add_subcommand("compare", "compare two run directories");
  std::string dir_a, dir_b, norm = "l1";
  compare_cmd->add_option("--a", dir_a, "first run directory")->required();
  compare_cmd->add_option("--b", dir_b, "second run directory (reference)")->required();
  compare_cmd->add_option("--norm", norm, "l1 | l2 | linf");

  auto* list_cmd = app.add_subcommand("list-scenarios", "print scenario and model ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(config_path, out_dir, model_override, dx_override, tfinal_override);
    }
    if (table_cmd->parsed()) {
      if (!build_cmd->parsed()) throw ValidationError("usage: table build --kind ... --out ...");
      return cmd_table_build(kind, table_out, table_n, table_bmax);
    }
    if (compare_cmd->parsed()) return cmd_compare(dir_a, dir_b, norm);
    if (list_cmd->parsed()) return cmd_list_scenarios();
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

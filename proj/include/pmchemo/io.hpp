#pragma once

#include <string>
#include <vector>

#include "pmchemo/runner.hpp"
#include "pmchemo/scenarios.hpp"

namespace pmchemo {

// JSON config: {"scenario": ..., "model": ...} is the minimal form; everything
// else defaults to the scenario's benchmark values. Unknown keys are rejected.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);
std::string config_to_text(const ScenarioConfig& config);

// One CSV per snapshot (full 17-digit precision) plus manifest.json with the
// resolved config, dt, step/projection counters and the snapshot index.
void write_run(const std::string& out_dir, const ScenarioConfig& config,
               const RunResult& result);

Snapshot read_snapshot_csv(const std::string& path);

struct RunDirectory {
  ScenarioConfig config;
  std::vector<double> times;
  std::vector<std::string> files;  // absolute/relative snapshot paths
};
RunDirectory read_run_directory(const std::string& dir);

struct CompareRow {
  double time;
  double abs_error;
  double rel_error;  // relative to the norm of run B's density
};

// Per-snapshot distance between the total densities of two runs.
std::vector<CompareRow> compare_runs(const std::string& dir_a, const std::string& dir_b,
                                     NormP p);

std::string format_compare_report(const std::vector<CompareRow>& rows, NormP p);

}  // namespace pmchemo

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pmchemo/scenarios.hpp"
#include "pmchemo/transport.hpp"

namespace pmchemo {

struct Snapshot {
  double time = 0.0;
  Grid grid;
  std::vector<std::pair<std::string, std::vector<double>>> fields;

  const std::vector<double>& field(const std::string& name) const;
  bool has_field(const std::string& name) const;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  double dt = 0.0;
  long steps = 0;
  long projections = 0;
  double projected_mass = 0.0;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  double max_chemo_residual = 0.0;
  long max_chemo_iterations = 0;
  double wall_seconds = 0.0;
};

// Preloaded closure tables; any missing entry needed by the model is built at
// default resolution (and cached process-wide).
struct TableSet {
  std::shared_ptr<const HalfClosureTable> half;
  std::shared_ptr<const QuarterClosureTable> quarter;
  std::shared_ptr<const M1Table1D> m1_line;
  std::shared_ptr<const M1Table2D> m1_disk;
};

// Default table resolutions.
inline constexpr int kHalfTableN = 2048;
inline constexpr double kHalfTableBMax = 500.0;
inline constexpr int kQuarterTableN = 128;
inline constexpr double kQuarterTableBMax = 70.0;
inline constexpr int kM1LineTableN = 2048;
inline constexpr double kM1LineTableBMax = 500.0;
inline constexpr int kM1DiskTableN = 2048;
inline constexpr double kM1DiskTableBMax = 70.0;

TableSet default_tables_for(ModelId model, const ScenarioConfig& config);

// The transient state handed to step monitors.
struct ModelState {
  std::variant<MomentField1D, FullMomentField1D, KineticField1D, MomentField2D,
               FullMomentField2D>
      field;
  ChemoField chemo;
};

using StepMonitor = std::function<void(long step, double t, const ModelState& state)>;

// Time loop: ghost fill + transport step + projection, then the chemo step,
// with fixed dt from compute_dt (last step truncated to land on t_final).
// Snapshots are observations only; they never alter the trajectory.
RunResult run(const ScenarioConfig& config, const TableSet* tables = nullptr,
              const StepMonitor& monitor = {});

// Superposition reference for the 2D two-spike scenarios: three independent
// full-moment runs (each spike alone plus the floor-only background), summed
// as A + B - floor so the shared background is not double counted.
struct SuperpositionResult {
  std::vector<Snapshot> superposed;  // field "rho" only
  RunResult run_a, run_b, run_floor;
};

SuperpositionResult run_superposition_reference(const ScenarioConfig& config,
                                                const TableSet* tables = nullptr);

}  // namespace pmchemo

#pragma once

#include <string>
#include <vector>

#include "pmchemo/grid.hpp"
#include "pmchemo/transport.hpp"

namespace pmchemo {

enum class ScenarioId {
  OneSpike1D,
  TwoSpikes1D,
  KurganovInterior,
  KurganovBoundary,
  OneSpike2D,
  TwoSpikesDiag,
  TwoSpikesAxial,
};

enum class ModelId { HP1, HM1, M1Line, Kinetic, QP1, QM1, M1Disk };

const char* to_string(ScenarioId id);
const char* to_string(ModelId id);
ScenarioId scenario_from_string(const std::string& name);
ModelId model_from_string(const std::string& name);
std::vector<ScenarioId> all_scenarios();
std::vector<ModelId> all_models();

int scenario_dim(ScenarioId id);
int model_dim(ModelId id);

// Which spikes of a two-spike 2D setup to seed; the superposition reference
// runs the single-spike and floor-only variants separately.
enum class SpikeSelect { Joint, SpikeA, SpikeB, FloorOnly };

struct SolverOptions {
  double chemo_rel_tol = 1e-10;
  long chemo_max_iter = 10000;
  bool explicit_chemo = false;
  bool chemo_pre_transport_rho = false;  // use the pre-transport density in the m source
  bool projection = true;
  int nv = 64;  // velocity cells of the kinetic reference
};

struct ScenarioConfig {
  ScenarioId scenario = ScenarioId::OneSpike1D;
  ModelId model = ModelId::HM1;
  Grid grid;
  double t_final = 0.0;
  ModelParams params;
  std::vector<double> snapshot_times;
  SolverOptions solver;
  std::string table_half, table_quarter, table_m1_line, table_m1_disk;
  SpikeSelect spike_select = SpikeSelect::Joint;
};

// Full benchmark parameter set for a scenario/model pair.
ScenarioConfig default_config(ScenarioId scenario, ModelId model);

// Initial states (midpoint evaluation of the printed data on the grid).
MomentField1D init_half_1d(ScenarioId id, const Grid& grid);
FullMomentField1D init_m1_1d(ScenarioId id, const Grid& grid);
KineticField1D init_kinetic_1d(ScenarioId id, const Grid& grid, int nv);
MomentField2D init_quarter_2d(ScenarioId id, const Grid& grid,
                              SpikeSelect select = SpikeSelect::Joint);
FullMomentField2D init_m1_2d(ScenarioId id, const Grid& grid,
                             SpikeSelect select = SpikeSelect::Joint);
ChemoField init_chemo(ScenarioId id, const Grid& grid);

enum class NormP { L1, L2, LInf };

// Grid-weighted discrete Lp distance between two cell fields.
double error_norm(const Grid& grid, const std::vector<double>& a,
                  const std::vector<double>& b, NormP p);

}  // namespace pmchemo

#include "pmchemo/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>

#include "pmchemo/errors.hpp"

namespace pmchemo {

const std::vector<double>& Snapshot::field(const std::string& name) const {
  for (const auto& [n, v] : fields) {
    if (n == name) return v;
  }
  throw ValidationError("snapshot has no field '" + name + "'");
}

bool Snapshot::has_field(const std::string& name) const {
  for (const auto& [n, v] : fields) {
    if (n == name) return true;
  }
  return false;
}

namespace {

std::shared_ptr<const HalfClosureTable> cached_half() {
  static std::mutex mu;
  static std::shared_ptr<const HalfClosureTable> t;
  std::lock_guard<std::mutex> lock(mu);
  if (!t) t = std::make_shared<HalfClosureTable>(build_half_table(kHalfTableN, kHalfTableBMax));
  return t;
}

std::shared_ptr<const QuarterClosureTable> cached_quarter() {
  static std::mutex mu;
  static std::shared_ptr<const QuarterClosureTable> t;
  std::lock_guard<std::mutex> lock(mu);
  if (!t) {
    t = std::make_shared<QuarterClosureTable>(
        build_quarter_table(kQuarterTableN, kQuarterTableBMax));
  }
  return t;
}

std::shared_ptr<const M1Table1D> cached_m1_line() {
  static std::mutex mu;
  static std::shared_ptr<const M1Table1D> t;
  std::lock_guard<std::mutex> lock(mu);
  if (!t) t = std::make_shared<M1Table1D>(build_m1_line_table(kM1LineTableN, kM1LineTableBMax));
  return t;
}

std::shared_ptr<const M1Table2D> cached_m1_disk() {
  static std::mutex mu;
  static std::shared_ptr<const M1Table2D> t;
  std::lock_guard<std::mutex> lock(mu);
  if (!t) t = std::make_shared<M1Table2D>(build_m1_disk_table(kM1DiskTableN, kM1DiskTableBMax));
  return t;
}

template <typename T>
std::shared_ptr<const T> from_file(const std::string& path) {
  ClosureTable any = load_table(path);
  if (!std::holds_alternative<T>(any)) {
    throw ValidationError("table file holds the wrong kind: " + path);
  }
  return std::make_shared<const T>(std::get<T>(std::move(any)));
}

}  // namespace

TableSet default_tables_for(ModelId model, const ScenarioConfig& config) {
  TableSet set;
  switch (model) {
    case ModelId::HM1:
      set.half = config.table_half.empty() ? cached_half()
                                           : from_file<HalfClosureTable>(config.table_half);
      break;
    case ModelId::QM1:
      set.quarter = config.table_quarter.empty()
                        ? cached_quarter()
                        : from_file<QuarterClosureTable>(config.table_quarter);
      break;
    case ModelId::M1Line:
      set.m1_line = config.table_m1_line.empty() ? cached_m1_line()
                                                 : from_file<M1Table1D>(config.table_m1_line);
      break;
    case ModelId::M1Disk:
      set.m1_disk = config.table_m1_disk.empty() ? cached_m1_disk()
                                                 : from_file<M1Table2D>(config.table_m1_disk);
      break;
    default: break;
  }
  return set;
}

namespace {

struct Simulation {
  ScenarioConfig config;
  ModelState state;
  TableSet tables;

  double total_mass() const {
    const Grid& g = state.chemo.grid;
    double vol = g.cell_volume();
    return std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          double sum = 0.0;
          if constexpr (std::is_same_v<T, MomentField1D>) {
            for (int i = 0; i < g.nx; ++i) sum += f.rho_p[i] + f.rho_m[i];
          } else if constexpr (std::is_same_v<T, FullMomentField1D>) {
            for (double r : f.rho) sum += r;
          } else if constexpr (std::is_same_v<T, KineticField1D>) {
            for (int i = 0; i < g.nx; ++i) sum += f.density(i);
          } else if constexpr (std::is_same_v<T, MomentField2D>) {
            for (int q = 0; q < 4; ++q) {
              for (double r : f.rho[q]) sum += r;
            }
          } else {
            for (double r : f.rho) sum += r;
          }
          return sum * vol;
        },
        state.field);
  }

  std::vector<double> total_rho() const {
    const Grid& g = state.chemo.grid;
    std::vector<double> rho(g.cells(), 0.0);
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, MomentField1D>) {
            for (std::size_t c = 0; c < rho.size(); ++c) rho[c] = f.rho_p[c] + f.rho_m[c];
          } else if constexpr (std::is_same_v<T, KineticField1D>) {
            for (int i = 0; i < g.nx; ++i) rho[i] = f.density(i);
          } else if constexpr (std::is_same_v<T, FullMomentField1D>) {
            rho = f.rho;
          } else if constexpr (std::is_same_v<T, MomentField2D>) {
            for (int q = 0; q < 4; ++q) {
              for (std::size_t c = 0; c < rho.size(); ++c) rho[c] += f.rho[q][c];
            }
          } else {
            rho = f.rho;
          }
        },
        state.field);
    return rho;
  }

  StepStats step_transport(double dt) {
    const ModelParams& p = config.params;
    const bool project = config.solver.projection;
    return std::visit(
        [&](auto& f) -> StepStats {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, MomentField1D>) {
            ClosureKind kind =
                config.model == ModelId::HP1 ? ClosureKind::Linear : ClosureKind::Entropy;
            return step_half_moment_1d(f, state.chemo, p, dt, kind, tables.half.get(), project);
          } else if constexpr (std::is_same_v<T, FullMomentField1D>) {
            return step_m1_1d(f, state.chemo, p, dt, *tables.m1_line, project);
          } else if constexpr (std::is_same_v<T, KineticField1D>) {
            step_kinetic_1d(f, state.chemo, p, dt);
            return {};
          } else if constexpr (std::is_same_v<T, MomentField2D>) {
            ClosureKind kind =
                config.model == ModelId::QP1 ? ClosureKind::Linear : ClosureKind::Entropy;
            return step_quarter_2d(f, state.chemo, p, dt, kind, tables.quarter.get(), project);
          } else {
            return step_m1_2d(f, state.chemo, p, dt, *tables.m1_disk, project);
          }
        },
        state.field);
  }

  ChemoStepInfo step_chemo(double dt, const std::vector<double>& rho) {
    ChemoOptions opt;
    opt.rel_tol = config.solver.chemo_rel_tol;
    opt.max_iter = config.solver.chemo_max_iter;
    opt.explicit_step = config.solver.explicit_chemo;
    if (state.chemo.grid.dim == 1) return step_chemo_1d(state.chemo, rho, dt, config.params, opt);
    return step_chemo_2d(state.chemo, rho, dt, config.params, opt);
  }

  Snapshot snapshot(double t) const {
    Snapshot s;
    s.time = t;
    s.grid = state.chemo.grid;
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, MomentField1D>) {
            s.fields = {{"rho_p", f.rho_p}, {"rho_m", f.rho_m}, {"q_p", f.q_p}, {"q_m", f.q_m}};
          } else if constexpr (std::is_same_v<T, FullMomentField1D>) {
            s.fields = {{"q", f.q}};
          } else if constexpr (std::is_same_v<T, KineticField1D>) {
            const Grid& g = f.grid;
            std::vector<double> rp(g.nx, 0.0), rm(g.nx, 0.0), qp(g.nx, 0.0), qm(g.nx, 0.0);
            double dv = f.dv();
            for (int i = 0; i < g.nx; ++i) {
              for (int j = 0; j < f.nv; ++j) {
                double v = f.v_node(j);
                double val = f.f[static_cast<std::size_t>(i) * f.nv + j] * dv;
                if (v > 0) {
                  rp[i] += val;
                  qp[i] += v * val;
                } else {
                  rm[i] += val;
                  qm[i] += v * val;
                }
              }
            }
            s.fields = {{"rho_p", rp}, {"rho_m", rm}, {"q_p", qp}, {"q_m", qm}};
          } else if constexpr (std::is_same_v<T, MomentField2D>) {
            static const char* qn[4] = {"pp", "mp", "mm", "pm"};
            for (int q = 0; q < 4; ++q) s.fields.emplace_back(std::string("rho_") + qn[q], f.rho[q]);
            for (int q = 0; q < 4; ++q) {
              s.fields.emplace_back(std::string("qx_") + qn[q], f.qx[q]);
              s.fields.emplace_back(std::string("qy_") + qn[q], f.qy[q]);
            }
          } else {
            s.fields = {{"qx", f.qx}, {"qy", f.qy}};
          }
        },
        state.field);
    s.fields.emplace_back("rho", total_rho());
    s.fields.emplace_back("m", state.chemo.m);
    return s;
  }
};

ModelState build_initial_state(const ScenarioConfig& c) {
  ModelState s;
  s.chemo = init_chemo(c.scenario, c.grid);
  switch (c.model) {
    case ModelId::HP1:
    case ModelId::HM1: s.field = init_half_1d(c.scenario, c.grid); break;
    case ModelId::M1Line: s.field = init_m1_1d(c.scenario, c.grid); break;
    case ModelId::Kinetic: s.field = init_kinetic_1d(c.scenario, c.grid, c.solver.nv); break;
    case ModelId::QP1:
    case ModelId::QM1: s.field = init_quarter_2d(c.scenario, c.grid, c.spike_select); break;
    case ModelId::M1Disk: s.field = init_m1_2d(c.scenario, c.grid, c.spike_select); break;
  }
  return s;
}

}  // namespace

RunResult run(const ScenarioConfig& config, const TableSet* tables, const StepMonitor& monitor) {
  if (scenario_dim(config.scenario) != model_dim(config.model)) {
    throw ValidationError("scenario/model dimension mismatch");
  }
  auto t_start = std::chrono::steady_clock::now();

  Simulation sim;
  sim.config = config;
  sim.tables = tables ? *tables : TableSet{};
  // fill any table the model needs that was not supplied
  TableSet defaults;
  bool need_half = config.model == ModelId::HM1 && !sim.tables.half;
  bool need_quarter = config.model == ModelId::QM1 && !sim.tables.quarter;
  bool need_m1_line = config.model == ModelId::M1Line && !sim.tables.m1_line;
  bool need_m1_disk = config.model == ModelId::M1Disk && !sim.tables.m1_disk;
  if (need_half || need_quarter || need_m1_line || need_m1_disk) {
    defaults = default_tables_for(config.model, config);
    if (need_half) sim.tables.half = defaults.half;
    if (need_quarter) sim.tables.quarter = defaults.quarter;
    if (need_m1_line) sim.tables.m1_line = defaults.m1_line;
    if (need_m1_disk) sim.tables.m1_disk = defaults.m1_disk;
  }
  sim.state = build_initial_state(config);

  RunResult result;
  result.dt = compute_dt(config.grid, config.params);
  result.initial_mass = sim.total_mass();

  std::vector<double> times = config.snapshot_times;
  std::sort(times.begin(), times.end());
  const double t_eps = 1e-9 * std::max(1.0, config.t_final);
  times.erase(std::unique(times.begin(), times.end(),
                          [&](double a, double b) { return std::abs(a - b) <= t_eps; }),
              times.end());
  std::size_t next_snap = 0;
  auto emit_due = [&](double t) {
    while (next_snap < times.size() && times[next_snap] <= t + t_eps) {
      result.snapshots.push_back(sim.snapshot(t));
      ++next_snap;
    }
  };

  double t = 0.0;
  emit_due(0.0);
  while (t < config.t_final - t_eps) {
    double dt = std::min(result.dt, config.t_final - t);
    std::vector<double> rho_pre;
    if (config.solver.chemo_pre_transport_rho) rho_pre = sim.total_rho();
    StepStats stats = sim.step_transport(dt);
    result.projections += stats.projections;
    result.projected_mass += stats.projected_mass;
    std::vector<double> rho_src =
        config.solver.chemo_pre_transport_rho ? std::move(rho_pre) : sim.total_rho();
    try {
      ChemoStepInfo info = sim.step_chemo(dt, rho_src);
      result.max_chemo_residual = std::max(result.max_chemo_residual, info.residual);
      result.max_chemo_iterations = std::max(result.max_chemo_iterations, info.iterations);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " (at step " +
                           std::to_string(result.steps + 1) + ")");
    }
    t += dt;
    ++result.steps;
    if (monitor) monitor(result.steps, t, sim.state);
    emit_due(t);
  }
  while (next_snap < times.size()) {
    result.snapshots.push_back(sim.snapshot(t));
    ++next_snap;
  }

  result.final_mass = sim.total_mass();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

SuperpositionResult run_superposition_reference(const ScenarioConfig& config,
                                                const TableSet* tables) {
  if (config.scenario != ScenarioId::TwoSpikesDiag &&
      config.scenario != ScenarioId::TwoSpikesAxial) {
    throw ValidationError("superposition reference needs a two-spike 2D scenario");
  }
  ScenarioConfig c = config;
  c.model = ModelId::M1Disk;
  SuperpositionResult out;
  c.spike_select = SpikeSelect::SpikeA;
  out.run_a = run(c, tables);
  c.spike_select = SpikeSelect::SpikeB;
  out.run_b = run(c, tables);
  c.spike_select = SpikeSelect::FloorOnly;
  out.run_floor = run(c, tables);

  for (std::size_t k = 0; k < out.run_a.snapshots.size(); ++k) {
    Snapshot s;
    s.time = out.run_a.snapshots[k].time;
    s.grid = out.run_a.snapshots[k].grid;
    std::vector<double> rho = out.run_a.snapshots[k].field("rho");
    const std::vector<double>& rb = out.run_b.snapshots[k].field("rho");
    const std::vector<double>& rf = out.run_floor.snapshots[k].field("rho");
    for (std::size_t c2 = 0; c2 < rho.size(); ++c2) rho[c2] += rb[c2] - rf[c2];
    s.fields.emplace_back("rho", std::move(rho));
    out.superposed.push_back(std::move(s));
  }
  return out;
}

}  // namespace pmchemo

#include "pmchemo/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "pmchemo/errors.hpp"

namespace pmchemo {

const char* to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::OneSpike1D: return "one_spike_1d";
    case ScenarioId::TwoSpikes1D: return "two_spikes_1d";
    case ScenarioId::KurganovInterior: return "kurganov_interior";
    case ScenarioId::KurganovBoundary: return "kurganov_boundary";
    case ScenarioId::OneSpike2D: return "one_spike_2d";
    case ScenarioId::TwoSpikesDiag: return "two_spikes_diag";
    case ScenarioId::TwoSpikesAxial: return "two_spikes_axial";
  }
  return "?";
}

const char* to_string(ModelId id) {
  switch (id) {
    case ModelId::HP1: return "hp1";
    case ModelId::HM1: return "hm1";
    case ModelId::M1Line: return "m1_1d";
    case ModelId::Kinetic: return "kinetic";
    case ModelId::QP1: return "qp1";
    case ModelId::QM1: return "qm1";
    case ModelId::M1Disk: return "m1_2d";
  }
  return "?";
}

std::vector<ScenarioId> all_scenarios() {
  return {ScenarioId::OneSpike1D,   ScenarioId::TwoSpikes1D,  ScenarioId::KurganovInterior,
          ScenarioId::KurganovBoundary, ScenarioId::OneSpike2D, ScenarioId::TwoSpikesDiag,
          ScenarioId::TwoSpikesAxial};
}

std::vector<ModelId> all_models() {
  return {ModelId::HP1, ModelId::HM1,  ModelId::M1Line, ModelId::Kinetic,
          ModelId::QP1, ModelId::QM1,  ModelId::M1Disk};
}

ScenarioId scenario_from_string(const std::string& name) {
  for (ScenarioId id : all_scenarios()) {
    if (name == to_string(id)) return id;
  }
  throw ValidationError("unknown scenario: " + name);
}

ModelId model_from_string(const std::string& name) {
  for (ModelId id : all_models()) {
    if (name == to_string(id)) return id;
  }
  throw ValidationError("unknown model: " + name);
}

int scenario_dim(ScenarioId id) {
  switch (id) {
    case ScenarioId::OneSpike1D:
    case ScenarioId::TwoSpikes1D:
    case ScenarioId::KurganovInterior:
    case ScenarioId::KurganovBoundary: return 1;
    default: return 2;
  }
}

int model_dim(ModelId id) {
  switch (id) {
    case ModelId::HP1:
    case ModelId::HM1:
    case ModelId::M1Line:
    case ModelId::Kinetic: return 1;
    default: return 2;
  }
}

namespace {

Grid grid_1d(double a, double b, int nx) {
  Grid g;
  g.dim = 1;
  g.x_min = a;
  g.x_max = b;
  g.nx = nx;
  g.ny = 1;
  return g;
}

Grid grid_2d(double a, double b, int n) {
  Grid g;
  g.dim = 2;
  g.x_min = a;
  g.x_max = b;
  g.nx = n;
  g.y_min = a;
  g.y_max = b;
  g.ny = n;
  return g;
}

double gauss(double z, double width2) { return std::exp(-z * z / width2); }

// diagonal two-spike bumps; zeta_p is centred at (1/sqrt2, -1/sqrt2)
double zeta_diag(double x, double y, int which) {
  const double c = 1.0 / std::sqrt(2.0);
  double dx = x - c;
  double dy = which > 0 ? y + c : y - c;
  return 100.0 * std::exp(-(dx * dx + dy * dy) / 0.001);
}

// axial bumps: A at (1,0) moving -x, B at (0,1) moving -y
double bump_axial(double x, double y, int which) {
  double dx = which == 0 ? x - 1.0 : x;
  double dy = which == 0 ? y : y - 1.0;
  return 100.0 * std::exp(-(dx * dx + dy * dy) / 0.001);
}

}  // namespace

ScenarioConfig default_config(ScenarioId scenario, ModelId model) {
  ScenarioConfig c;
  c.scenario = scenario;
  c.model = model;
  switch (scenario) {
    case ScenarioId::OneSpike1D:
      c.grid = grid_1d(-3.0, 3.0, 300);
      c.t_final = 5.0;
      c.params = {2.0, 2.0, 1.0, 1.0, 1.0, 0.0};
      break;
    case ScenarioId::TwoSpikes1D:
      c.grid = grid_1d(-3.0, 3.0, 300);
      c.t_final = 4.0;
      c.params = {0.5, 0.5, 0.0, 0.0, 0.0, 0.0};
      break;
    case ScenarioId::KurganovInterior:
    case ScenarioId::KurganovBoundary:
      c.grid = grid_1d(0.0, 1.0, 50);
      c.t_final = 50.0;
      c.params = {0.5, 1.2 * (1.0 + 4.0 * kPi * kPi), 1.0, 1.0, 1.0, 0.0};
      break;
    case ScenarioId::OneSpike2D:
      c.grid = grid_2d(-3.0, 3.0, 60);
      c.t_final = 1.0;
      c.params = {2.0, 4.0, 8.0, 1.0, 1.0, 0.0};
      break;
    case ScenarioId::TwoSpikesDiag:
    case ScenarioId::TwoSpikesAxial:
      c.grid = grid_2d(-3.0, 3.0, 60);
      c.t_final = 2.0;
      c.params = {1.0 / kPi, 2.0 / kPi, 0.0, 0.0, 0.0, 1.0};
      break;
  }
  c.snapshot_times = {0.0, c.t_final / 4.0, c.t_final / 2.0, 3.0 * c.t_final / 4.0, c.t_final};
  return c;
}

MomentField1D init_half_1d(ScenarioId id, const Grid& grid) {
  MomentField1D f;
  f.grid = grid;
  f.rho_p.resize(grid.nx);
  f.rho_m.resize(grid.nx);
  f.q_p.resize(grid.nx);
  f.q_m.resize(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    double x = grid.x_center(i);
    switch (id) {
      case ScenarioId::OneSpike1D: {
        double r = 0.5 * (100.0 * gauss(x, 0.01) + 1e-4);
        f.rho_p[i] = r;
        f.rho_m[i] = r;
        f.q_p[i] = 0.5 * r;
        f.q_m[i] = -0.5 * r;
        break;
      }
      case ScenarioId::TwoSpikes1D: {
        double gp = 100.0 * gauss(x + 1.0, 0.01);
        double gm = 100.0 * gauss(x - 1.0, 0.01);
        f.rho_p[i] = gp + 1e-4;
        f.rho_m[i] = gm + 1e-4;
        f.q_p[i] = gp;
        f.q_m[i] = -gm;  // the spike at x = +1 moves left
        break;
      }
      case ScenarioId::KurganovInterior:
      case ScenarioId::KurganovBoundary: {
        double sgn = id == ScenarioId::KurganovInterior ? -1.0 : 1.0;
        double r = 0.5 * (1.0 + sgn * 0.01 * (1.0 + 4.0 * kPi * kPi) * std::cos(2.0 * kPi * x));
        f.rho_p[i] = r;
        f.rho_m[i] = r;
        f.q_p[i] = 0.5 * r;
        f.q_m[i] = -0.5 * r;
        break;
      }
      default:
        throw ValidationError("init_half_1d: scenario is not one-dimensional");
    }
  }
  return f;
}

FullMomentField1D init_m1_1d(ScenarioId id, const Grid& grid) {
  MomentField1D h = init_half_1d(id, grid);
  FullMomentField1D f;
  f.grid = grid;
  f.rho.resize(grid.nx);
  f.q.resize(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    f.rho[i] = h.rho_p[i] + h.rho_m[i];
    f.q[i] = h.q_p[i] + h.q_m[i];
  }
  return f;
}

KineticField1D init_kinetic_1d(ScenarioId id, const Grid& grid, int nv) {
  KineticField1D f;
  f.grid = grid;
  f.nv = nv;
  f.f.resize(grid.cells() * nv);
  for (int i = 0; i < grid.nx; ++i) {
    double x = grid.x_center(i);
    for (int j = 0; j < nv; ++j) {
      double v = f.v_node(j);
      double val = 0.0;
      switch (id) {
        case ScenarioId::OneSpike1D:
          val = 0.5 * (100.0 * gauss(x, 0.01) + 1e-4);
          break;
        case ScenarioId::TwoSpikes1D:
          val = 100.0 / (0.05 * std::sqrt(kPi)) *
                (gauss(v + 1.0, 0.01) * gauss(x - 1.0, 0.01) +
                 gauss(v - 1.0, 0.01) * gauss(x + 1.0, 0.01));
          break;
        case ScenarioId::KurganovInterior:
        case ScenarioId::KurganovBoundary: {
          double sgn = id == ScenarioId::KurganovInterior ? -1.0 : 1.0;
          val = 0.5 *
                (1.0 + sgn * 0.01 * (1.0 + 4.0 * kPi * kPi) * std::cos(2.0 * kPi * x));
          break;
        }
        default:
          throw ValidationError("init_kinetic_1d: scenario is not one-dimensional");
      }
      f.f[static_cast<std::size_t>(i) * nv + j] = val;
    }
  }
  return f;
}

MomentField2D init_quarter_2d(ScenarioId id, const Grid& grid, SpikeSelect select) {
  MomentField2D f;
  f.grid = grid;
  for (int q = 0; q < 4; ++q) {
    f.rho[q].assign(grid.cells(), 0.0);
    f.qx[q].assign(grid.cells(), 0.0);
    f.qy[q].assign(grid.cells(), 0.0);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const int MP = static_cast<int>(Quadrant::MP);
  const int MM = static_cast<int>(Quadrant::MM);
  const int PM = static_cast<int>(Quadrant::PM);
  const bool with_a = select == SpikeSelect::Joint || select == SpikeSelect::SpikeA;
  const bool with_b = select == SpikeSelect::Joint || select == SpikeSelect::SpikeB;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      std::size_t c = grid.id(i, j);
      double x = grid.x_center(i), y = grid.y_center(j);
      switch (id) {
        case ScenarioId::OneSpike2D: {
          double r = 0.25 * (100.0 * std::exp(-100.0 * (x * x + y * y)) + 1e-4);
          for (int q = 0; q < 4; ++q) {
            auto [sx, sy] = quadrant_signs(static_cast<Quadrant>(q));
            f.rho[q][c] = r;
            f.qx[q][c] = 0.5 * sx * r;
            f.qy[q][c] = 0.5 * sy * r;
          }
          break;
        }
        case ScenarioId::TwoSpikesDiag: {
          double zp = with_a ? zeta_diag(x, y, +1) : 0.0;
          double zm = with_b ? zeta_diag(x, y, -1) : 0.0;
          for (int q = 0; q < 4; ++q) f.rho[q][c] = 1e-4;
          f.rho[MP][c] += zp;
          f.qx[MP][c] = -zp * inv_sqrt2;
          f.qy[MP][c] = zp * inv_sqrt2;
          f.rho[MM][c] += zm;
          f.qx[MM][c] = -zm * inv_sqrt2;
          f.qy[MM][c] = -zm * inv_sqrt2;
          break;
        }
        case ScenarioId::TwoSpikesAxial: {
          double ga = with_a ? bump_axial(x, y, 0) : 0.0;
          double gb = with_b ? bump_axial(x, y, 1) : 0.0;
          for (int q = 0; q < 4; ++q) f.rho[q][c] = 1e-4;
          // the beam at (1,0) moves along -x, split between MP and MM;
          // the beam at (0,1) moves along -y, split between MM and PM
          f.rho[MP][c] += 0.5 * ga;
          f.qx[MP][c] = -0.5 * ga;
          f.rho[MM][c] += 0.5 * ga + 0.5 * gb;
          f.qx[MM][c] = -0.5 * ga;
          f.qy[MM][c] = -0.5 * gb;
          f.rho[PM][c] += 0.5 * gb;
          f.qy[PM][c] = -0.5 * gb;
          break;
        }
        default:
          throw ValidationError("init_quarter_2d: scenario is not two-dimensional");
      }
    }
  }
  return f;
}

FullMomentField2D init_m1_2d(ScenarioId id, const Grid& grid, SpikeSelect select) {
  MomentField2D quarters = init_quarter_2d(id, grid, select);
  FullMomentField2D f;
  f.grid = grid;
  f.rho.assign(grid.cells(), 0.0);
  f.qx.assign(grid.cells(), 0.0);
  f.qy.assign(grid.cells(), 0.0);
  for (int q = 0; q < 4; ++q) {
    for (std::size_t c = 0; c < grid.cells(); ++c) {
      f.rho[c] += quarters.rho[q][c];
      f.qx[c] += quarters.qx[q][c];
      f.qy[c] += quarters.qy[q][c];
    }
  }
  if (id == ScenarioId::OneSpike2D) {
    // isotropic data: the quadrant fluxes cancel exactly
    std::fill(f.qx.begin(), f.qx.end(), 0.0);
    std::fill(f.qy.begin(), f.qy.end(), 0.0);
  }
  return f;
}

ChemoField init_chemo(ScenarioId id, const Grid& grid) {
  ChemoField f;
  f.grid = grid;
  f.m.resize(grid.cells());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      std::size_t c = grid.id(i, j);
      double x = grid.x_center(i);
      double y = grid.dim == 2 ? grid.y_center(j) : 0.0;
      switch (id) {
        case ScenarioId::OneSpike1D:
        case ScenarioId::OneSpike2D: f.m[c] = 0.0; break;
        case ScenarioId::TwoSpikes1D: f.m[c] = -x * x + 9.0; break;
        case ScenarioId::KurganovInterior:
          f.m[c] = 1.0 - 0.01 * std::cos(2.0 * kPi * x);
          break;
        case ScenarioId::KurganovBoundary:
          f.m[c] = 1.0 + 0.01 * std::cos(2.0 * kPi * x);
          break;
        case ScenarioId::TwoSpikesDiag:
        case ScenarioId::TwoSpikesAxial: f.m[c] = -(x * x + y * y) + 18.0; break;
      }
    }
  }
  return f;
}

double error_norm(const Grid& grid, const std::vector<double>& a,
                  const std::vector<double>& b, NormP p) {
  if (a.size() != b.size() || a.size() != grid.cells()) {
    throw ValidationError("error_norm: field sizes do not match the grid");
  }
  double vol = grid.cell_volume();
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = std::abs(a[k] - b[k]);
    switch (p) {
      case NormP::L1: acc += d * vol; break;
      case NormP::L2: acc += d * d * vol; break;
      case NormP::LInf: acc = std::max(acc, d); break;
    }
  }
  return p == NormP::L2 ? std::sqrt(acc) : acc;
}

}  // namespace pmchemo

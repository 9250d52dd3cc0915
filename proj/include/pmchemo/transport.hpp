#pragma once

#include <array>
#include <vector>

#include "pmchemo/chemo.hpp"
#include "pmchemo/closures.hpp"
#include "pmchemo/grid.hpp"
#include "pmchemo/tables.hpp"

namespace pmchemo {

struct MomentField1D {
  Grid grid;
  std::vector<double> rho_p, rho_m, q_p, q_m;
};

struct FullMomentField1D {
  Grid grid;
  std::vector<double> rho, q;
};

struct KineticField1D {
  Grid grid;
  int nv = 64;
  std::vector<double> f;  // index i*nv + j

  double dv() const { return 2.0 / nv; }
  double v_node(int j) const { return -1.0 + (j + 0.5) * dv(); }
  double density(int i) const {
    double s = 0.0;
    for (int j = 0; j < nv; ++j) s += f[static_cast<std::size_t>(i) * nv + j];
    return s * dv();
  }
};

struct MomentField2D {
  Grid grid;
  std::array<std::vector<double>, 4> rho, qx, qy;  // indexed by Quadrant
};

struct FullMomentField2D {
  Grid grid;
  std::vector<double> rho, qx, qy;
};

// Stability bound dt = 0.5 / (1/dx + lambda + alpha*(s+1)); 2D uses
// min(dx, dy).
double compute_dt(const Grid& grid, const ModelParams& params);

struct StepStats {
  long projections = 0;        // cells changed by the realizability projection
  double projected_mass = 0.0; // total cell mass added by the projection

  void operator+=(const StepStats& o) {
    projections += o.projections;
    projected_mass += o.projected_mass;
  }
};

// --- reflective ghost cells -------------------------------------------------

struct HalfMomentCell {
  double rho_p, rho_m, q_p, q_m;
};

struct Ghost1DPair {
  HalfMomentCell left, right;
};

// Left ghost swaps the minus moments into the plus slots with flipped flux;
// the entries never read by the upwind stencil are outflow copies.
Ghost1DPair fill_ghost_reflective_1d(const MomentField1D& state);

enum class Edge { Left, Right, Bottom, Top };

struct QuarterCell {
  std::array<double, 4> rho;
  std::array<Vec2, 4> q;
};

// One layer of ghost cells along the given edge (index runs along the edge).
std::vector<QuarterCell> fill_ghost_reflective_2d(const MomentField2D& state, Edge edge);

// Specular reflection of a single cell across an edge normal; exposed so the
// corner double-reflection property is testable.
QuarterCell reflect_quarter_cell(const QuarterCell& cell, Edge edge);

// --- steppers ----------------------------------------------------------------
// All steppers advance one explicit step with upwind (partial moments) or
// local Lax-Friedrichs (full moments) fluxes, explicit sources, reflective
// walls, and the cellwise realizability projection (unless disabled).

StepStats step_half_moment_1d(MomentField1D& state, const ChemoField& m,
                              const ModelParams& params, double dt, ClosureKind closure,
                              const HalfClosureTable* table, bool project = true);

void step_kinetic_1d(KineticField1D& state, const ChemoField& m, const ModelParams& params,
                     double dt);

StepStats step_m1_1d(FullMomentField1D& state, const ChemoField& m, const ModelParams& params,
                     double dt, const M1Table1D& table, bool project = true);

StepStats step_quarter_2d(MomentField2D& state, const ChemoField& m, const ModelParams& params,
                          double dt, ClosureKind closure, const QuarterClosureTable* table,
                          bool project = true);

StepStats step_m1_2d(FullMomentField2D& state, const ChemoField& m, const ModelParams& params,
                     double dt, const M1Table2D& table, bool project = true);

}  // namespace pmchemo

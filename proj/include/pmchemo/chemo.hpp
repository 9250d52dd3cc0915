#pragma once

#include <vector>

#include "pmchemo/grid.hpp"
#include "pmchemo/velocity.hpp"

namespace pmchemo {

struct ChemoField {
  Grid grid;
  std::vector<double> m;
};

struct ChemoOptions {
  double rel_tol = 1e-10;
  long max_iter = 10000;
  bool explicit_step = false;  // forward-Euler diffusion, for kinetic-parity runs
};

struct ChemoStepInfo {
  long iterations = 0;
  double residual = 0.0;
};

// Cell-centred gradient: second-order central differences in the interior,
// first-order one-sided at the boundary cells.
std::vector<double> gradient_m_1d(const ChemoField& field);
std::vector<Vec2> gradient_m_2d(const ChemoField& field);

// One step of  m' - D_m Lap(m) = beta*max(rho,0) - delta*m  with Neumann
// boundaries: diffusion implicit, production and decay explicit,
//   (I - D_m*dt/h^2 * L) m^{n+1} = dt*beta*max(rho,0) + (1 - dt*delta) m^n.
// 1D solves the tridiagonal system directly; 2D uses a conjugate-residual
// iteration on the (symmetric positive definite) operator.
ChemoStepInfo step_chemo_1d(ChemoField& field, const std::vector<double>& rho, double dt,
                            const ModelParams& params, const ChemoOptions& opt = {});
ChemoStepInfo step_chemo_2d(ChemoField& field, const std::vector<double>& rho, double dt,
                            const ModelParams& params, const ChemoOptions& opt = {});

}  // namespace pmchemo

#pragma once

#include <cstddef>

#include "pmchemo/velocity.hpp"

namespace pmchemo {

// Equidistant structured grid; dim == 1 ignores the y extent (ny == 1).
struct Grid {
  int dim = 1;
  double x_min = 0.0, x_max = 1.0;
  int nx = 0;
  double y_min = 0.0, y_max = 1.0;
  int ny = 1;

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  double x_center(int i) const { return x_min + (i + 0.5) * dx(); }
  double y_center(int j) const { return y_min + (j + 0.5) * dy(); }
  std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t id(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  double cell_volume() const { return dim == 1 ? dx() : dx() * dy(); }

  bool operator==(const Grid& o) const {
    return dim == o.dim && x_min == o.x_min && x_max == o.x_max && nx == o.nx &&
           (dim == 1 || (y_min == o.y_min && y_max == o.y_max && ny == o.ny));
  }
};

// Physical coefficients of the coupled cell/chemoattractant system.
struct ModelParams {
  double lambda = 0.0;  // turning rate
  double alpha = 0.0;   // chemotactic sensitivity
  double beta = 0.0;    // chemoattractant production
  double delta = 0.0;   // chemoattractant decay
  double D_m = 0.0;     // chemoattractant diffusivity
  double s = 0.0;       // limiter threshold

  // lambda >= C_V * alpha * (s+1) makes the turning kernel non-negative;
  // violations are allowed but worth a warning.
  bool turning_kernel_ok(int dim) const {
    double cv = dim == 1 ? kCv1D : kCv2D;
    return lambda >= cv * alpha * (s + 1.0);
  }
};

}  // namespace pmchemo

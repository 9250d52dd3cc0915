#include "pmchemo/chemo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pmchemo/errors.hpp"

namespace pmchemo {

std::vector<double> gradient_m_1d(const ChemoField& field) {
  const Grid& g = field.grid;
  if (g.nx < 3) throw std::invalid_argument("gradient_m_1d: need nx >= 3");
  const double dx = g.dx();
  std::vector<double> grad(g.nx);
  grad[0] = (field.m[1] - field.m[0]) / dx;
  for (int i = 1; i + 1 < g.nx; ++i) grad[i] = (field.m[i + 1] - field.m[i - 1]) / (2.0 * dx);
  grad[g.nx - 1] = (field.m[g.nx - 1] - field.m[g.nx - 2]) / dx;
  return grad;
}

std::vector<Vec2> gradient_m_2d(const ChemoField& field) {
  const Grid& g = field.grid;
  if (g.nx < 3 || g.ny < 3) throw std::invalid_argument("gradient_m_2d: need nx, ny >= 3");
  const double dx = g.dx(), dy = g.dy();
  std::vector<Vec2> grad(g.cells());
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double gx, gy;
      if (i == 0) {
        gx = (field.m[g.id(1, j)] - field.m[g.id(0, j)]) / dx;
      } else if (i == g.nx - 1) {
        gx = (field.m[g.id(i, j)] - field.m[g.id(i - 1, j)]) / dx;
      } else {
        gx = (field.m[g.id(i + 1, j)] - field.m[g.id(i - 1, j)]) / (2.0 * dx);
      }
      if (j == 0) {
        gy = (field.m[g.id(i, 1)] - field.m[g.id(i, 0)]) / dy;
      } else if (j == g.ny - 1) {
        gy = (field.m[g.id(i, j)] - field.m[g.id(i, j - 1)]) / dy;
      } else {
        gy = (field.m[g.id(i, j + 1)] - field.m[g.id(i, j - 1)]) / (2.0 * dy);
      }
      grad[g.id(i, j)] = {gx, gy};
    }
  }
  return grad;
}

namespace {

std::vector<double> reaction_rhs(const ChemoField& field, const std::vector<double>& rho,
                                 double dt, const ModelParams& p) {
  std::vector<double> rhs(field.m.size());
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    rhs[k] = dt * p.beta * std::max(rho[k], 0.0) + (1.0 - dt * p.delta) * field.m[k];
  }
  return rhs;
}

void check_step_args(double dt, const ModelParams& p, std::size_t cells, std::size_t rho_n,
                     std::size_t m_n) {
  if (dt <= 0.0) throw std::invalid_argument("step_chemo: dt <= 0");
  if (dt * p.delta >= 1.0) {
    throw std::invalid_argument("step_chemo: explicit decay requires dt*delta < 1");
  }
  if (rho_n != cells || m_n != cells) {
    throw std::invalid_argument("step_chemo: field/rho size mismatch");
  }
}

}  // namespace

ChemoStepInfo step_chemo_1d(ChemoField& field, const std::vector<double>& rho, double dt,
                            const ModelParams& params, const ChemoOptions& opt) {
  const Grid& g = field.grid;
  check_step_args(dt, params, g.cells(), rho.size(), field.m.size());
  const int n = g.nx;
  const double c = params.D_m * dt / (g.dx() * g.dx());
  std::vector<double> rhs = reaction_rhs(field, rho, dt, params);

  if (opt.explicit_step) {
    if (c > 0.5) {
      throw std::invalid_argument("step_chemo_1d: explicit diffusion needs D_m*dt/dx^2 <= 1/2");
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
      double left = field.m[std::max(i - 1, 0)];
      double right = field.m[std::min(i + 1, n - 1)];
      out[i] = rhs[i] + c * (left - 2.0 * field.m[i] + right);
    }
    field.m = std::move(out);
    return {0, 0.0};
  }

  // Thomas elimination of (I - c*L), Neumann closure mirrors the boundary cell.
  std::vector<double> cp(n), dp(n);
  double diag0 = 1.0 + c;
  cp[0] = -c / diag0;
  dp[0] = rhs[0] / diag0;
  for (int i = 1; i < n; ++i) {
    double diag = (i == n - 1 ? 1.0 + c : 1.0 + 2.0 * c);
    double denom = diag + c * cp[i - 1];
    cp[i] = -c / denom;
    dp[i] = (rhs[i] + c * dp[i - 1]) / denom;
  }
  field.m[n - 1] = dp[n - 1];
  for (int i = n - 2; i >= 0; --i) field.m[i] = dp[i] - cp[i] * field.m[i + 1];
  return {0, 0.0};
}

ChemoStepInfo step_chemo_2d(ChemoField& field, const std::vector<double>& rho, double dt,
                            const ModelParams& params, const ChemoOptions& opt) {
  const Grid& g = field.grid;
  check_step_args(dt, params, g.cells(), rho.size(), field.m.size());
  const double cx = params.D_m * dt / (g.dx() * g.dx());
  const double cy = params.D_m * dt / (g.dy() * g.dy());
  std::vector<double> rhs = reaction_rhs(field, rho, dt, params);

  if (opt.explicit_step) {
    if (cx + cy > 0.5) {
      throw std::invalid_argument("step_chemo_2d: explicit diffusion CFL violated");
    }
  }
  if (params.D_m == 0.0 || opt.explicit_step) {
    if (params.D_m == 0.0) {
      field.m = std::move(rhs);
      return {0, 0.0};
    }
    std::vector<double> out(g.cells());
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        double mc = field.m[g.id(i, j)];
        double lap = cx * (field.m[g.id(std::max(i - 1, 0), j)] - 2.0 * mc +
                           field.m[g.id(std::min(i + 1, g.nx - 1), j)]) +
                     cy * (field.m[g.id(i, std::max(j - 1, 0))] - 2.0 * mc +
                           field.m[g.id(i, std::min(j + 1, g.ny - 1))]);
        out[g.id(i, j)] = rhs[g.id(i, j)] + lap;
      }
    }
    field.m = std::move(out);
    return {0, 0.0};
  }

  // conjugate residual on (I - cx*Lx - cy*Ly), warm-started from the old m
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        double xc = x[g.id(i, j)];
        double lap = cx * (x[g.id(std::max(i - 1, 0), j)] - 2.0 * xc +
                           x[g.id(std::min(i + 1, g.nx - 1), j)]) +
                     cy * (x[g.id(i, std::max(j - 1, 0))] - 2.0 * xc +
                           x[g.id(i, std::min(j + 1, g.ny - 1))]);
        y[g.id(i, j)] = xc - lap;
      }
    }
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  };

  const std::size_t n = g.cells();
  double bnorm = std::sqrt(dot(rhs, rhs));
  if (bnorm == 0.0) {
    std::fill(field.m.begin(), field.m.end(), 0.0);
    return {0, 0.0};
  }
  std::vector<double> x = field.m, r(n), Ar(n), p(n), Ap(n), tmp(n);
  apply(x, tmp);
  for (std::size_t k = 0; k < n; ++k) r[k] = rhs[k] - tmp[k];
  double rnorm = std::sqrt(dot(r, r));
  ChemoStepInfo info;
  if (rnorm / bnorm <= opt.rel_tol) {
    info.residual = rnorm / bnorm;
    field.m = std::move(x);
    return info;
  }
  apply(r, Ar);
  p = r;
  Ap = Ar;
  double rAr = dot(r, Ar);
  for (long it = 1; it <= opt.max_iter; ++it) {
    double alpha = rAr / dot(Ap, Ap);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * Ap[k];
    }
    rnorm = std::sqrt(dot(r, r));
    info.iterations = it;
    info.residual = rnorm / bnorm;
    if (info.residual <= opt.rel_tol) {
      for (std::size_t k = 0; k < n; ++k) x[k] = std::max(x[k], 0.0);
      field.m = std::move(x);
      return info;
    }
    apply(r, Ar);
    double rAr_next = dot(r, Ar);
    double beta = rAr_next / rAr;
    rAr = rAr_next;
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = r[k] + beta * p[k];
      Ap[k] = Ar[k] + beta * Ap[k];
    }
  }
  throw NumericalError("step_chemo_2d: no convergence after " + std::to_string(opt.max_iter) +
                       " iterations, residual " + std::to_string(info.residual));
}

}  // namespace pmchemo

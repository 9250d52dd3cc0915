#include "pmchemo/transport.hpp"

#include <cmath>
#include <stdexcept>

#include "pmchemo/realizability.hpp"

namespace pmchemo {

double compute_dt(const Grid& grid, const ModelParams& p) {
  double h = grid.dim == 1 ? grid.dx() : std::min(grid.dx(), grid.dy());
  return 0.5 / (1.0 / h + p.lambda + p.alpha * (p.s + 1.0));
}

// ---------------------------------------------------------------------------
// ghost cells
// ---------------------------------------------------------------------------

Ghost1DPair fill_ghost_reflective_1d(const MomentField1D& s) {
  const int n = s.grid.nx;
  Ghost1DPair g;
  // reflected (read by the upwind stencil)
  g.left.rho_p = s.rho_m[0];
  g.left.q_p = -s.q_m[0];
  g.right.rho_m = s.rho_p[n - 1];
  g.right.q_m = -s.q_p[n - 1];
  // outflow copies (never read by the stencil)
  g.left.rho_m = s.rho_m[0];
  g.left.q_m = s.q_m[0];
  g.right.rho_p = s.rho_p[n - 1];
  g.right.q_p = s.q_p[n - 1];
  return g;
}

namespace {

inline int mirror_x(int q) {
  switch (static_cast<Quadrant>(q)) {
    case Quadrant::PP: return static_cast<int>(Quadrant::MP);
    case Quadrant::MP: return static_cast<int>(Quadrant::PP);
    case Quadrant::MM: return static_cast<int>(Quadrant::PM);
    case Quadrant::PM: return static_cast<int>(Quadrant::MM);
  }
  return q;
}

inline int mirror_y(int q) {
  switch (static_cast<Quadrant>(q)) {
    case Quadrant::PP: return static_cast<int>(Quadrant::PM);
    case Quadrant::PM: return static_cast<int>(Quadrant::PP);
    case Quadrant::MP: return static_cast<int>(Quadrant::MM);
    case Quadrant::MM: return static_cast<int>(Quadrant::MP);
  }
  return q;
}

}  // namespace

QuarterCell reflect_quarter_cell(const QuarterCell& cell, Edge edge) {
  const bool x_edge = edge == Edge::Left || edge == Edge::Right;
  QuarterCell out;
  for (int q = 0; q < 4; ++q) {
    int src = x_edge ? mirror_x(q) : mirror_y(q);
    out.rho[q] = cell.rho[src];
    out.q[q] = x_edge ? Vec2{-cell.q[src].x, cell.q[src].y}
                      : Vec2{cell.q[src].x, -cell.q[src].y};
  }
  return out;
}

std::vector<QuarterCell> fill_ghost_reflective_2d(const MomentField2D& s, Edge edge) {
  const Grid& g = s.grid;
  const bool x_edge = edge == Edge::Left || edge == Edge::Right;
  const int len = x_edge ? g.ny : g.nx;
  std::vector<QuarterCell> ghosts(len);
  for (int k = 0; k < len; ++k) {
    std::size_t c;
    switch (edge) {
      case Edge::Left: c = g.id(0, k); break;
      case Edge::Right: c = g.id(g.nx - 1, k); break;
      case Edge::Bottom: c = g.id(k, 0); break;
      default: c = g.id(k, g.ny - 1); break;
    }
    QuarterCell boundary;
    for (int q = 0; q < 4; ++q) {
      boundary.rho[q] = s.rho[q][c];
      boundary.q[q] = {s.qx[q][c], s.qy[q][c]};
    }
    QuarterCell refl = reflect_quarter_cell(boundary, edge);
    // quadrants streaming out of the domain keep the outflow copy
    for (int q = 0; q < 4; ++q) {
      auto [sx, sy] = quadrant_signs(static_cast<Quadrant>(q));
      bool incoming = (edge == Edge::Left && sx > 0) || (edge == Edge::Right && sx < 0) ||
                      (edge == Edge::Bottom && sy > 0) || (edge == Edge::Top && sy < 0);
      if (!incoming) {
        refl.rho[q] = boundary.rho[q];
        refl.q[q] = boundary.q[q];
      }
    }
    ghosts[k] = refl;
  }
  return ghosts;
}

// ---------------------------------------------------------------------------
// 1D half-moment step
// ---------------------------------------------------------------------------

StepStats step_half_moment_1d(MomentField1D& state, const ChemoField& m,
                              const ModelParams& p, double dt, ClosureKind closure,
                              const HalfClosureTable* table, bool project) {
  const Grid& g = state.grid;
  const int n = g.nx;
  const double dxi = dt / g.dx();
  if (closure == ClosureKind::Entropy && table == nullptr) {
    throw std::invalid_argument("step_half_moment_1d: entropy closure needs a table");
  }

  auto r_plus = [&](double rho, double q) {
    return closure == ClosureKind::Linear ? linear_half_closure_side(rho, q, Domain1D::Plus)
                                          : entropy_half_closure_side(rho, q, +1, *table);
  };
  auto r_minus = [&](double rho, double q) {
    return closure == ClosureKind::Linear ? linear_half_closure_side(rho, q, Domain1D::Minus)
                                          : entropy_half_closure_side(rho, q, -1, *table);
  };

  Ghost1DPair ghost = fill_ghost_reflective_1d(state);
  // closure values on cells -1..n (offset by one)
  std::vector<double> rp(n + 2), rm(n + 2);
  rp[0] = r_plus(ghost.left.rho_p, ghost.left.q_p);
  rm[0] = r_minus(ghost.left.rho_m, ghost.left.q_m);
  for (int i = 0; i < n; ++i) {
    rp[i + 1] = r_plus(state.rho_p[i], state.q_p[i]);
    rm[i + 1] = r_minus(state.rho_m[i], state.q_m[i]);
  }
  rp[n + 1] = r_plus(ghost.right.rho_p, ghost.right.q_p);
  rm[n + 1] = r_minus(ghost.right.rho_m, ghost.right.q_m);

  std::vector<double> grad = gradient_m_1d(m);
  std::vector<double> nrp(n), nrm(n), nqp(n), nqm(n);
  auto qp_at = [&](int i) {
    if (i < 0) return ghost.left.q_p;
    if (i >= n) return ghost.right.q_p;
    return state.q_p[i];
  };
  auto qm_at = [&](int i) {
    if (i < 0) return ghost.left.q_m;
    if (i >= n) return ghost.right.q_m;
    return state.q_m[i];
  };

  for (int i = 0; i < n; ++i) {
    double rho = state.rho_p[i] + state.rho_m[i];
    double phi = limiter_phi(grad[i], p.s);
    double chemo = p.alpha * rho * phi;
    nrp[i] = state.rho_p[i] - dxi * (qp_at(i) - qp_at(i - 1)) +
             dt * (-p.lambda * state.rho_p[i] + 0.5 * p.lambda * rho + 0.25 * chemo);
    nrm[i] = state.rho_m[i] - dxi * (qm_at(i + 1) - qm_at(i)) +
             dt * (-p.lambda * state.rho_m[i] + 0.5 * p.lambda * rho - 0.25 * chemo);
    nqp[i] = state.q_p[i] - dxi * (rp[i + 1] - rp[i]) +
             dt * (-p.lambda * state.q_p[i] + 0.25 * p.lambda * rho + chemo / 6.0);
    nqm[i] = state.q_m[i] - dxi * (rm[i + 2] - rm[i + 1]) +
             dt * (-p.lambda * state.q_m[i] - 0.25 * p.lambda * rho + chemo / 6.0);
  }

  StepStats stats;
  for (int i = 0; i < n; ++i) {
    if (project) {
      HalfProjection pp = project_half(nrp[i], nqp[i], +1);
      HalfProjection pm = project_half(nrm[i], nqm[i], -1);
      bool changed = pp.rho != nrp[i] || pp.q != nqp[i] || pm.rho != nrm[i] || pm.q != nqm[i];
      if (changed) {
        ++stats.projections;
        stats.projected_mass += (pp.rho - nrp[i] + pm.rho - nrm[i]) * g.dx();
      }
      nrp[i] = pp.rho;
      nqp[i] = pp.q;
      nrm[i] = pm.rho;
      nqm[i] = pm.q;
    }
    state.rho_p[i] = nrp[i];
    state.rho_m[i] = nrm[i];
    state.q_p[i] = nqp[i];
    state.q_m[i] = nqm[i];
  }
  return stats;
}

// ---------------------------------------------------------------------------
// 1D kinetic step
// ---------------------------------------------------------------------------

void step_kinetic_1d(KineticField1D& state, const ChemoField& m, const ModelParams& p,
                     double dt) {
  const Grid& g = state.grid;
  const int n = g.nx, nv = state.nv;
  const double dxi = dt / g.dx();

  std::vector<double> grad = gradient_m_1d(m);
  std::vector<double> rho(n, 0.0);
  for (int i = 0; i < n; ++i) rho[i] = state.density(i);

  auto f_at = [&](int i, int j) {
    // reflective walls: specular v -> -v, midpoint v-grid is symmetric
    if (i < 0) return state.f[static_cast<std::size_t>(0) * nv + (nv - 1 - j)];
    if (i >= n) return state.f[static_cast<std::size_t>(n - 1) * nv + (nv - 1 - j)];
    return state.f[static_cast<std::size_t>(i) * nv + j];
  };

  std::vector<double> out(state.f.size());
  for (int i = 0; i < n; ++i) {
    double phi = limiter_phi(grad[i], p.s);
    for (int j = 0; j < nv; ++j) {
      double v = state.v_node(j);
      double fc = f_at(i, j);
      double adv = v > 0.0 ? v * (fc - f_at(i - 1, j)) : v * (f_at(i + 1, j) - fc);
      double src = -p.lambda * (fc - 0.5 * rho[i]) + 0.5 * p.alpha * rho[i] * v * phi;
      out[static_cast<std::size_t>(i) * nv + j] = fc - dxi * adv + dt * src;
    }
  }
  state.f = std::move(out);
}

// ---------------------------------------------------------------------------
// 1D full-moment (M1) step, local Lax-Friedrichs
// ---------------------------------------------------------------------------

StepStats step_m1_1d(FullMomentField1D& state, const ChemoField& m, const ModelParams& p,
                     double dt, const M1Table1D& table, bool project) {
  const Grid& g = state.grid;
  const int n = g.nx;
  const double dxi = dt / g.dx();

  // cells -1..n with reflective ghosts (rho mirrored, q negated)
  std::vector<double> rho(n + 2), q(n + 2), r(n + 2);
  rho[0] = state.rho[0];
  q[0] = -state.q[0];
  rho[n + 1] = state.rho[n - 1];
  q[n + 1] = -state.q[n - 1];
  for (int i = 0; i < n; ++i) {
    rho[i + 1] = state.rho[i];
    q[i + 1] = state.q[i];
  }
  for (int i = 0; i < n + 2; ++i) r[i] = m1_full_closure_1d(rho[i], q[i], table);

  // interface fluxes with unit numerical viscosity
  std::vector<double> frho(n + 1), fq(n + 1);
  for (int k = 0; k <= n; ++k) {
    int L = k, R = k + 1;
    frho[k] = 0.5 * (q[L] + q[R]) - 0.5 * (rho[R] - rho[L]);
    fq[k] = 0.5 * (r[L] + r[R]) - 0.5 * (q[R] - q[L]);
  }

  std::vector<double> grad = gradient_m_1d(m);
  StepStats stats;
  for (int i = 0; i < n; ++i) {
    double phi = limiter_phi(grad[i], p.s);
    double nrho = state.rho[i] - dxi * (frho[i + 1] - frho[i]);
    double nq = state.q[i] - dxi * (fq[i + 1] - fq[i]) +
                dt * (-p.lambda * state.q[i] + p.alpha / 3.0 * state.rho[i] * phi);
    if (project) {
      HalfProjection pr = project_full_1d(nrho, nq);
      if (pr.rho != nrho || pr.q != nq) {
        ++stats.projections;
        stats.projected_mass += (pr.rho - nrho) * g.dx();
      }
      nrho = pr.rho;
      nq = pr.q;
    }
    state.rho[i] = nrho;
    state.q[i] = nq;
  }
  return stats;
}

// ---------------------------------------------------------------------------
// 2D quarter-moment step
// ---------------------------------------------------------------------------

namespace {

struct QVals {
  double rho, qx, qy, rxx, rxy, ryy;
};

}  // namespace

StepStats step_quarter_2d(MomentField2D& state, const ChemoField& m, const ModelParams& p,
                          double dt, ClosureKind closure, const QuarterClosureTable* table,
                          bool project) {
  const Grid& g = state.grid;
  const int nx = g.nx, ny = g.ny;
  const double dxi = dt / g.dx(), dyi = dt / g.dy();
  if (closure == ClosureKind::Entropy && table == nullptr) {
    throw std::invalid_argument("step_quarter_2d: entropy closure needs a table");
  }

  std::vector<Vec2> grad = gradient_m_2d(m);
  std::vector<double> rho_tot(g.cells(), 0.0);
  for (int q = 0; q < 4; ++q) {
    for (std::size_t c = 0; c < g.cells(); ++c) rho_tot[c] += state.rho[q][c];
  }

  // closure per quadrant per cell
  std::array<std::vector<double>, 4> rxx, rxy, ryy;
  for (int q = 0; q < 4; ++q) {
    rxx[q].resize(g.cells());
    rxy[q].resize(g.cells());
    ryy[q].resize(g.cells());
    Quadrant quad = static_cast<Quadrant>(q);
    for (std::size_t c = 0; c < g.cells(); ++c) {
      Vec2 qv{state.qx[q][c], state.qy[q][c]};
      SymMat2 r = closure == ClosureKind::Linear
                      ? linear_quarter_closure_one(state.rho[q][c], qv, quad)
                      : entropy_quarter_closure_one(state.rho[q][c], qv, quad, *table);
      rxx[q][c] = r.xx;
      rxy[q][c] = r.xy;
      ryy[q][c] = r.yy;
    }
  }

  auto get = [&](int q, int i, int j) -> QVals {
    if (i >= 0 && i < nx && j >= 0 && j < ny) {
      std::size_t c = g.id(i, j);
      return {state.rho[q][c], state.qx[q][c], state.qy[q][c], rxx[q][c], rxy[q][c], ryy[q][c]};
    }
    if (i < 0 || i >= nx) {
      int src = mirror_x(q);
      std::size_t c = g.id(i < 0 ? 0 : nx - 1, j);
      return {state.rho[src][c], -state.qx[src][c], state.qy[src][c],
              rxx[src][c], -rxy[src][c], ryy[src][c]};
    }
    int src = mirror_y(q);
    std::size_t c = g.id(i, j < 0 ? 0 : ny - 1);
    return {state.rho[src][c], state.qx[src][c], -state.qy[src][c],
            rxx[src][c], -rxy[src][c], ryy[src][c]};
  };

  std::array<std::vector<double>, 4> nrho, nqx, nqy;
  for (int q = 0; q < 4; ++q) {
    nrho[q].resize(g.cells());
    nqx[q].resize(g.cells());
    nqy[q].resize(g.cells());
    Quadrant quad = static_cast<Quadrant>(q);
    auto [sx, sy] = quadrant_signs(quad);
    Moments2D basis = basis_moments_2d(quadrant_domain(quad));
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        std::size_t c = g.id(i, j);
        QVals cc = get(q, i, j);
        QVals xm = sx > 0 ? get(q, i - 1, j) : get(q, i + 1, j);
        QVals ym = sy > 0 ? get(q, i, j - 1) : get(q, i, j + 1);
        double ddx_rho = sx > 0 ? cc.qx - xm.qx : xm.qx - cc.qx;
        double ddx_qx = sx > 0 ? cc.rxx - xm.rxx : xm.rxx - cc.rxx;
        double ddx_qy = sx > 0 ? cc.rxy - xm.rxy : xm.rxy - cc.rxy;
        double ddy_rho = sy > 0 ? cc.qy - ym.qy : ym.qy - cc.qy;
        double ddy_qx = sy > 0 ? cc.rxy - ym.rxy : ym.rxy - cc.rxy;
        double ddy_qy = sy > 0 ? cc.ryy - ym.ryy : ym.ryy - cc.ryy;

        Vec2 phi = limiter_phi(grad[c], p.s);
        double rt = rho_tot[c];
        double chemo_rho = kCv2D * p.alpha * rt * basis.m1.dot(phi);
        Vec2 chemo_q = basis.m2.apply(phi) * (kCv2D * p.alpha * rt);
        double relax_rho = 0.25 * p.lambda * (rt - 4.0 * cc.rho);
        Vec2 relax_q = basis.m1 * (kCv2D * p.lambda * rt) - Vec2{cc.qx, cc.qy} * p.lambda;

        nrho[q][c] = cc.rho - dxi * ddx_rho - dyi * ddy_rho + dt * (relax_rho + chemo_rho);
        nqx[q][c] = cc.qx - dxi * ddx_qx - dyi * ddy_qx + dt * (relax_q.x + chemo_q.x);
        nqy[q][c] = cc.qy - dxi * ddx_qy - dyi * ddy_qy + dt * (relax_q.y + chemo_q.y);
      }
    }
  }

  StepStats stats;
  for (int q = 0; q < 4; ++q) {
    Quadrant quad = static_cast<Quadrant>(q);
    for (std::size_t c = 0; c < g.cells(); ++c) {
      double r0 = nrho[q][c];
      Vec2 q0{nqx[q][c], nqy[q][c]};
      if (project) {
        QuarterProjection pr = project_quarter(r0, q0, quad);
        if (pr.rho != r0 || pr.q.x != q0.x || pr.q.y != q0.y) {
          ++stats.projections;
          stats.projected_mass += (pr.rho - r0) * g.cell_volume();
        }
        r0 = pr.rho;
        q0 = pr.q;
      }
      state.rho[q][c] = r0;
      state.qx[q][c] = q0.x;
      state.qy[q][c] = q0.y;
    }
  }
  return stats;
}

// ---------------------------------------------------------------------------
// 2D full-moment (M1) step, local Lax-Friedrichs
// ---------------------------------------------------------------------------

StepStats step_m1_2d(FullMomentField2D& state, const ChemoField& m, const ModelParams& p,
                     double dt, const M1Table2D& table, bool project) {
  const Grid& g = state.grid;
  const int nx = g.nx, ny = g.ny;
  const double dxi = dt / g.dx(), dyi = dt / g.dy();

  std::vector<double> rxx(g.cells()), rxy(g.cells()), ryy(g.cells());
  for (std::size_t c = 0; c < g.cells(); ++c) {
    SymMat2 r = m1_full_closure_2d(state.rho[c], {state.qx[c], state.qy[c]}, table);
    rxx[c] = r.xx;
    rxy[c] = r.xy;
    ryy[c] = r.yy;
  }

  struct UF {
    double rho, qx, qy, rxx, rxy, ryy;
  };
  auto get = [&](int i, int j) -> UF {
    if (i >= 0 && i < nx && j >= 0 && j < ny) {
      std::size_t c = g.id(i, j);
      return {state.rho[c], state.qx[c], state.qy[c], rxx[c], rxy[c], ryy[c]};
    }
    if (i < 0 || i >= nx) {
      std::size_t c = g.id(i < 0 ? 0 : nx - 1, j);
      return {state.rho[c], -state.qx[c], state.qy[c], rxx[c], -rxy[c], ryy[c]};
    }
    std::size_t c = g.id(i, j < 0 ? 0 : ny - 1);
    return {state.rho[c], state.qx[c], -state.qy[c], rxx[c], -rxy[c], ryy[c]};
  };

  // interface fluxes, x then y
  std::vector<double> fx_rho((nx + 1) * ny), fx_qx((nx + 1) * ny), fx_qy((nx + 1) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int k = 0; k <= nx; ++k) {
      UF L = get(k - 1, j), R = get(k, j);
      std::size_t id = static_cast<std::size_t>(j) * (nx + 1) + k;
      fx_rho[id] = 0.5 * (L.qx + R.qx) - 0.5 * (R.rho - L.rho);
      fx_qx[id] = 0.5 * (L.rxx + R.rxx) - 0.5 * (R.qx - L.qx);
      fx_qy[id] = 0.5 * (L.rxy + R.rxy) - 0.5 * (R.qy - L.qy);
    }
  }
  std::vector<double> fy_rho(nx * (ny + 1)), fy_qx(nx * (ny + 1)), fy_qy(nx * (ny + 1));
  for (int k = 0; k <= ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      UF B = get(i, k - 1), T = get(i, k);
      std::size_t id = static_cast<std::size_t>(k) * nx + i;
      fy_rho[id] = 0.5 * (B.qy + T.qy) - 0.5 * (T.rho - B.rho);
      fy_qx[id] = 0.5 * (B.rxy + T.rxy) - 0.5 * (T.qx - B.qx);
      fy_qy[id] = 0.5 * (B.ryy + T.ryy) - 0.5 * (T.qy - B.qy);
    }
  }

  std::vector<Vec2> grad = gradient_m_2d(m);
  StepStats stats;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      std::size_t c = g.id(i, j);
      std::size_t xl = static_cast<std::size_t>(j) * (nx + 1) + i;
      std::size_t yl = static_cast<std::size_t>(j) * nx + i;
      std::size_t yu = static_cast<std::size_t>(j + 1) * nx + i;
      Vec2 phi = limiter_phi(grad[c], p.s);
      double nrho = state.rho[c] - dxi * (fx_rho[xl + 1] - fx_rho[xl]) -
                    dyi * (fy_rho[yu] - fy_rho[yl]);
      double nqx = state.qx[c] - dxi * (fx_qx[xl + 1] - fx_qx[xl]) -
                   dyi * (fy_qx[yu] - fy_qx[yl]) +
                   dt * (-p.lambda * state.qx[c] + p.alpha / 3.0 * state.rho[c] * phi.x);
      double nqy = state.qy[c] - dxi * (fx_qy[xl + 1] - fx_qy[xl]) -
                   dyi * (fy_qy[yu] - fy_qy[yl]) +
                   dt * (-p.lambda * state.qy[c] + p.alpha / 3.0 * state.rho[c] * phi.y);
      if (project) {
        QuarterProjection pr = project_full_2d(nrho, {nqx, nqy});
        if (pr.rho != nrho || pr.q.x != nqx || pr.q.y != nqy) {
          ++stats.projections;
          stats.projected_mass += (pr.rho - nrho) * g.cell_volume();
        }
        nrho = pr.rho;
        nqx = pr.q.x;
        nqy = pr.q.y;
      }
      state.rho[c] = nrho;
      state.qx[c] = nqx;
      state.qy[c] = nqy;
    }
  }
  return stats;
}

}  // namespace pmchemo

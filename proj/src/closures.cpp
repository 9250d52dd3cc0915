#include "pmchemo/closures.hpp"

#include <cmath>
#include <string>

#include "pmchemo/errors.hpp"

namespace pmchemo {

namespace {

constexpr double kSlack = 1e-9;  // tolerance on realizability preconditions

[[noreturn]] void throw_unrealizable(const char* what, double rho, double q) {
  throw RealizabilityError(std::string(what) + ": rho=" + std::to_string(rho) +
                           " q=" + std::to_string(q));
}

[[noreturn]] void throw_unrealizable2(const char* what, double rho, const Vec2& q) {
  throw RealizabilityError(std::string(what) + ": rho=" + std::to_string(rho) +
                           " q=(" + std::to_string(q.x) + "," + std::to_string(q.y) + ")");
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

double linear_half_closure_side(double rho, double q, Domain1D side) {
  Moments1D m = basis_moments_1d(side);
  double m3 = basis_third_moment_1d(side);
  double det = m.m0 * m.m2 - m.m1 * m.m1;
  double a = (m.m2 * rho - m.m1 * q) / det;
  double b = (m.m0 * q - m.m1 * rho) / det;
  return m.m2 * a + m3 * b;
}

std::pair<double, double> linear_half_closure(const HalfMoments& hm) {
  return {linear_half_closure_side(hm.rho_p, hm.q_p, Domain1D::Plus),
          linear_half_closure_side(hm.rho_m, hm.q_m, Domain1D::Minus)};
}

double entropy_half_closure_side(double rho, double q, int sign,
                                 const HalfClosureTable& table) {
  if (rho < 0.0) throw_unrealizable("entropy_half_closure: rho < 0", rho, q);
  if (rho == 0.0) {
    if (q != 0.0) throw_unrealizable("entropy_half_closure: q != 0 at rho = 0", rho, q);
    return 0.0;
  }
  double slack = kSlack * std::max(rho, 1.0);
  if (sign * q < -slack) throw_unrealizable("entropy_half_closure: wrong flux sign", rho, q);
  if (std::abs(q) > rho + slack) {
    throw_unrealizable("entropy_half_closure: |q| > rho", rho, q);
  }
  double u = clamp(sign * q / rho, 0.0, 1.0);
  return rho * table.lookup(u).w;
}

std::pair<double, double> entropy_half_closure(const HalfMoments& hm,
                                               const HalfClosureTable& table) {
  return {entropy_half_closure_side(hm.rho_p, hm.q_p, +1, table),
          entropy_half_closure_side(hm.rho_m, hm.q_m, -1, table)};
}

SymMat2 linear_quarter_closure_one(double rho, const Vec2& q, Quadrant quad) {
  Domain2D dom = quadrant_domain(quad);
  Moments2D m = basis_moments_2d(dom);
  ThirdMoments2D m3 = basis_third_moments_2d(dom);
  // solve the 3x3 basis-moment system for (a, bx, by)
  double A[3][3] = {{m.m0, m.m1.x, m.m1.y},
                    {m.m1.x, m.m2.xx, m.m2.xy},
                    {m.m1.y, m.m2.xy, m.m2.yy}};
  double rhs[3] = {rho, q.x, q.y};
  double det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
               A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
               A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
  // the basis-moment matrix is a fixed nonsingular constant per quadrant
  double inv[3][3] = {
      {(A[1][1] * A[2][2] - A[1][2] * A[2][1]) / det,
       (A[0][2] * A[2][1] - A[0][1] * A[2][2]) / det,
       (A[0][1] * A[1][2] - A[0][2] * A[1][1]) / det},
      {(A[1][2] * A[2][0] - A[1][0] * A[2][2]) / det,
       (A[0][0] * A[2][2] - A[0][2] * A[2][0]) / det,
       (A[0][2] * A[1][0] - A[0][0] * A[1][2]) / det},
      {(A[1][0] * A[2][1] - A[1][1] * A[2][0]) / det,
       (A[0][1] * A[2][0] - A[0][0] * A[2][1]) / det,
       (A[0][0] * A[1][1] - A[0][1] * A[1][0]) / det}};
  double a = inv[0][0] * rhs[0] + inv[0][1] * rhs[1] + inv[0][2] * rhs[2];
  double bx = inv[1][0] * rhs[0] + inv[1][1] * rhs[1] + inv[1][2] * rhs[2];
  double by = inv[2][0] * rhs[0] + inv[2][1] * rhs[1] + inv[2][2] * rhs[2];
  SymMat2 r;
  r.xx = a * m.m2.xx + m3.xxx * bx + m3.xxy * by;
  r.xy = a * m.m2.xy + m3.xxy * bx + m3.xyy * by;
  r.yy = a * m.m2.yy + m3.xyy * bx + m3.yyy * by;
  return r;
}

std::array<SymMat2, 4> linear_quarter_closure(const QuarterMoments& qm) {
  std::array<SymMat2, 4> out;
  for (int k = 0; k < 4; ++k) {
    out[k] = linear_quarter_closure_one(qm.rho[k], qm.q[k], static_cast<Quadrant>(k));
  }
  return out;
}

SymMat2 entropy_quarter_closure_one(double rho, const Vec2& q, Quadrant quad,
                                    const QuarterClosureTable& table) {
  if (rho < 0.0) throw_unrealizable2("entropy_quarter_closure: rho < 0", rho, q);
  if (rho == 0.0) {
    if (q.x != 0.0 || q.y != 0.0) {
      throw_unrealizable2("entropy_quarter_closure: q != 0 at rho = 0", rho, q);
    }
    return {};
  }
  auto [sx, sy] = quadrant_signs(quad);
  double slack = kSlack * std::max(rho, 1.0);
  if (sx * q.x < -slack || sy * q.y < -slack) {
    throw_unrealizable2("entropy_quarter_closure: flux sign outside quadrant", rho, q);
  }
  if (q.norm() > rho + slack) {
    throw_unrealizable2("entropy_quarter_closure: |q| > rho", rho, q);
  }
  // reflect into the PP quadrant
  Vec2 u{clamp(sx * q.x / rho, 0.0, 1.0), clamp(sy * q.y / rho, 0.0, 1.0)};
  double un = u.norm();
  if (un > 1.0) u = u / un;

  QuarterClosureTable::Eval e = table.lookup(u);
  SymMat2 w = e.w;
  if (!e.inside) {
    double ut = u.norm(), ur = e.u_reached.norm();
    if (ut > ur) {
      // between the sampled range and the beam limit w -> u (x) u at |u| = 1
      double t = clamp((ut - ur) / std::max(1.0 - ur, 1e-12), 0.0, 1.0);
      Vec2 n = u / ut;
      SymMat2 beam{n.x * n.x, n.x * n.y, n.y * n.y};
      w = w * (1.0 - t) + beam * t;
    } else if (ur > 0.0) {
      // toward the rest state: second moment vanishes quadratically
      double f = (ut / ur) * (ut / ur);
      w = w * f;
    }
  }
  // reflect back
  SymMat2 r{w.xx, sx * sy * w.xy, w.yy};
  return r * rho;
}

std::array<SymMat2, 4> entropy_quarter_closure(const QuarterMoments& qm,
                                               const QuarterClosureTable& table) {
  std::array<SymMat2, 4> out;
  for (int k = 0; k < 4; ++k) {
    out[k] = entropy_quarter_closure_one(qm.rho[k], qm.q[k], static_cast<Quadrant>(k), table);
  }
  return out;
}

double m1_full_closure_1d(double rho, double q, const M1Table1D& table) {
  if (rho < 0.0) throw_unrealizable("m1_full_closure_1d: rho < 0", rho, q);
  if (rho == 0.0) {
    if (q != 0.0) throw_unrealizable("m1_full_closure_1d: q != 0 at rho = 0", rho, q);
    return 0.0;
  }
  if (std::abs(q) > rho * (1.0 + kSlack) + kSlack) {
    throw_unrealizable("m1_full_closure_1d: |q| > rho", rho, q);
  }
  double u = clamp(std::abs(q) / rho, 0.0, 1.0);
  return rho * table.lookup_abs(u).w;
}

SymMat2 m1_full_closure_2d(double rho, const Vec2& q, const M1Table2D& table) {
  if (rho < 0.0) throw_unrealizable2("m1_full_closure_2d: rho < 0", rho, q);
  if (rho == 0.0) {
    if (q.x != 0.0 || q.y != 0.0) {
      throw_unrealizable2("m1_full_closure_2d: q != 0 at rho = 0", rho, q);
    }
    return {};
  }
  double qa = q.norm();
  if (qa > rho * (1.0 + kSlack) + kSlack) {
    throw_unrealizable2("m1_full_closure_2d: |q| > rho", rho, q);
  }
  double a = clamp(qa / rho, 0.0, 1.0);
  M1Table2D::Eval e = table.lookup_abs(a);
  Vec2 n = a > 0.0 ? q / qa : Vec2{1.0, 0.0};
  SymMat2 w{e.w_perp + (e.w_par - e.w_perp) * n.x * n.x, (e.w_par - e.w_perp) * n.x * n.y,
            e.w_perp + (e.w_par - e.w_perp) * n.y * n.y};
  return w * rho;
}

}  // namespace pmchemo

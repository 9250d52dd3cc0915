#include "pmchemo/realizability.hpp"

#include <cmath>

namespace pmchemo {

RealizabilityReport check_half(const HalfMoments& hm, std::optional<double> r_p,
                               std::optional<double> r_m, double tol) {
  RealizabilityReport rep;
  rep.merge(-hm.rho_p, "rho_p >= 0", tol);
  rep.merge(-hm.rho_m, "rho_m >= 0", tol);
  rep.merge(-hm.q_p, "q_p >= 0", tol);
  rep.merge(hm.q_m, "q_m <= 0", tol);
  rep.merge(std::abs(hm.q_p) - hm.rho_p, "|q_p| <= rho_p", tol);
  rep.merge(std::abs(hm.q_m) - hm.rho_m, "|q_m| <= rho_m", tol);
  if (r_p) {
    if (hm.rho_p > 0.0) {
      rep.merge(hm.q_p * hm.q_p / hm.rho_p - *r_p, "q_p^2/rho_p <= r_p", tol);
    }
    rep.merge(*r_p - hm.q_p, "r_p <= q_p", tol);
  }
  if (r_m) {
    if (hm.rho_m > 0.0) {
      rep.merge(hm.q_m * hm.q_m / hm.rho_m - *r_m, "q_m^2/rho_m <= r_m", tol);
    }
    rep.merge(*r_m - (-hm.q_m), "r_m <= -q_m", tol);
  }
  return rep;
}

RealizabilityReport check_quarter(double rho, const Vec2& q, Quadrant quad, double tol) {
  RealizabilityReport rep;
  auto [sx, sy] = quadrant_signs(quad);
  rep.merge(-rho, "rho >= 0", tol);
  rep.merge(-sx * q.x, "sign(q_x)", tol);
  rep.merge(-sy * q.y, "sign(q_y)", tol);
  rep.merge(q.norm() - rho, "|q| <= rho", tol);
  return rep;
}

RealizabilityReport check_full_1d(double rho, double q, double tol) {
  RealizabilityReport rep;
  rep.merge(-rho, "rho >= 0", tol);
  rep.merge(std::abs(q) - rho, "|q| <= rho", tol);
  return rep;
}

RealizabilityReport check_full_2d(double rho, const Vec2& q, double tol) {
  RealizabilityReport rep;
  rep.merge(-rho, "rho >= 0", tol);
  rep.merge(q.norm() - rho, "|q| <= rho", tol);
  return rep;
}

HalfProjection project_half(double rho, double q, int sign) {
  HalfProjection p;
  p.rho = std::max(rho, kDensityFloor);
  p.q = sign * std::max(sign * q, 0.0);
  p.q = sign * std::min(sign * p.q, p.rho);
  return p;
}

QuarterProjection project_quarter(double rho, Vec2 q, Quadrant quad) {
  auto [sx, sy] = quadrant_signs(quad);
  QuarterProjection p;
  p.rho = std::max(rho, kDensityFloor);
  p.q.x = sx * std::max(sx * q.x, 0.0);
  p.q.y = sy * std::max(sy * q.y, 0.0);
  // direction-preserving rescale onto |q| <= rho; iterate so the rounded
  // result satisfies the inequality exactly (makes the map idempotent)
  for (int it = 0; it < 4 && p.q.norm() > p.rho; ++it) {
    double f = p.rho / p.q.norm();
    p.q.x *= f;
    p.q.y *= f;
    if (p.q.norm() > p.rho) {
      p.q.x = std::nextafter(p.q.x, 0.0);
      p.q.y = std::nextafter(p.q.y, 0.0);
    }
  }
  return p;
}

HalfProjection project_full_1d(double rho, double q) {
  HalfProjection p;
  p.rho = std::max(rho, kDensityFloor);
  p.q = std::min(std::max(q, -p.rho), p.rho);
  return p;
}

QuarterProjection project_full_2d(double rho, Vec2 q) {
  QuarterProjection p;
  p.rho = std::max(rho, kDensityFloor);
  p.q = q;
  for (int it = 0; it < 4 && p.q.norm() > p.rho; ++it) {
    double f = p.rho / p.q.norm();
    p.q.x *= f;
    p.q.y *= f;
    if (p.q.norm() > p.rho) {
      p.q.x = std::nextafter(p.q.x, 0.0);
      p.q.y = std::nextafter(p.q.y, 0.0);
    }
  }
  return p;
}

}  // namespace pmchemo

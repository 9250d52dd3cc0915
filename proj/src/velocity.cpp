#include "pmchemo/velocity.hpp"

#include <cmath>
#include <stdexcept>

namespace pmchemo {

double domain_measure(Domain1D d) {
  return d == Domain1D::Full ? 2.0 : 1.0;
}

double domain_measure(Domain2D d) {
  return d == Domain2D::FullDisk ? 4.0 * kPi : kPi;
}

std::pair<int, int> quadrant_signs(Quadrant q) {
  switch (q) {
    case Quadrant::PP: return {+1, +1};
    case Quadrant::MP: return {-1, +1};
    case Quadrant::MM: return {-1, -1};
    case Quadrant::PM: return {+1, -1};
  }
  return {0, 0};
}

Domain2D quadrant_domain(Quadrant q) {
  switch (q) {
    case Quadrant::PP: return Domain2D::PP;
    case Quadrant::MP: return Domain2D::MP;
    case Quadrant::MM: return Domain2D::MM;
    case Quadrant::PM: return Domain2D::PM;
  }
  return Domain2D::PP;
}

Quadrant domain_quadrant(Domain2D d) {
  switch (d) {
    case Domain2D::PP: return Quadrant::PP;
    case Domain2D::MP: return Quadrant::MP;
    case Domain2D::MM: return Quadrant::MM;
    case Domain2D::PM: return Quadrant::PM;
    case Domain2D::FullDisk: break;
  }
  throw std::invalid_argument("domain_quadrant: FullDisk has no quadrant");
}

Moments1D basis_moments_1d(Domain1D d) {
  switch (d) {
    case Domain1D::Full: return {2.0, 0.0, 2.0 / 3.0};
    case Domain1D::Plus: return {1.0, 0.5, 1.0 / 3.0};
    case Domain1D::Minus: return {1.0, -0.5, 1.0 / 3.0};
  }
  return {};
}

double basis_third_moment_1d(Domain1D d) {
  switch (d) {
    case Domain1D::Full: return 0.0;
    case Domain1D::Plus: return 0.25;
    case Domain1D::Minus: return -0.25;
  }
  return 0.0;
}

Moments2D basis_moments_2d(Domain2D d) {
  if (d == Domain2D::FullDisk) {
    return {4.0 * kPi, {0.0, 0.0}, {4.0 * kPi / 3.0, 0.0, 4.0 * kPi / 3.0}};
  }
  auto [sx, sy] = quadrant_signs(domain_quadrant(d));
  Moments2D m;
  m.m0 = kPi;
  m.m1 = {sx * kPi / 2.0, sy * kPi / 2.0};
  m.m2 = {kPi / 3.0, sx * sy * 2.0 / 3.0, kPi / 3.0};
  return m;
}

ThirdMoments2D basis_third_moments_2d(Domain2D d) {
  if (d == Domain2D::FullDisk) return {0.0, 0.0, 0.0, 0.0};
  auto [sx, sy] = quadrant_signs(domain_quadrant(d));
  return {sx * kPi / 4.0, sy * kPi / 8.0, sx * kPi / 8.0, sy * kPi / 4.0};
}

QuadratureRule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  QuadratureRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n, nodes on [-1,1], then affine map to [a,b].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = w * half;
    rule.weights[n - 1 - i] = w * half;
  }
  return rule;
}

QuadratureRule1D quadrature(Domain1D d, int n) {
  if (n < 2) throw std::invalid_argument("quadrature: n < 2");
  switch (d) {
    case Domain1D::Full: return gauss_legendre(n, -1.0, 1.0);
    case Domain1D::Plus: return gauss_legendre(n, 0.0, 1.0);
    case Domain1D::Minus: return gauss_legendre(n, -1.0, 0.0);
  }
  return {};
}

namespace {

std::pair<double, double> phi_interval(Domain2D d) {
  switch (d) {
    case Domain2D::FullDisk: return {0.0, 2.0 * kPi};
    case Domain2D::PP: return {0.0, kPi / 2.0};
    case Domain2D::MP: return {kPi / 2.0, kPi};
    case Domain2D::MM: return {kPi, 1.5 * kPi};
    case Domain2D::PM: return {1.5 * kPi, 2.0 * kPi};
  }
  return {0.0, 0.0};
}

}  // namespace

QuadratureRule2D quadrature(Domain2D d, int n_phi, int n_r) {
  if (n_phi < 2 || n_r < 2) throw std::invalid_argument("quadrature: n < 2");
  auto [phi_a, phi_b] = phi_interval(d);
  QuadratureRule1D phi_rule = gauss_legendre(n_phi, phi_a, phi_b);
  QuadratureRule1D theta_rule = gauss_legendre(n_r, -kPi / 2.0, kPi / 2.0);
  QuadratureRule2D rule;
  rule.nodes.reserve(static_cast<size_t>(n_phi) * n_r);
  rule.weights.reserve(static_cast<size_t>(n_phi) * n_r);
  for (int i = 0; i < n_phi; ++i) {
    double cphi = std::cos(phi_rule.nodes[i]);
    double sphi = std::sin(phi_rule.nodes[i]);
    for (int j = 0; j < n_r; ++j) {
      double ct = std::cos(theta_rule.nodes[j]);  // = sqrt(1-r^2), also dr/dtheta
      rule.nodes.push_back({ct * cphi, ct * sphi});
      rule.weights.push_back(phi_rule.weights[i] * theta_rule.weights[j] * ct);
    }
  }
  return rule;
}

double limiter_phi(double g, double s) {
  double a = std::abs(g);
  if (a <= s) return g;
  double e = a - s;
  return (e / std::sqrt(1.0 + e * e) + s) * (g / a);
}

Vec2 limiter_phi(const Vec2& g, double s) {
  double a = g.norm();
  if (a <= s) return g;
  double e = a - s;
  return g * ((e / std::sqrt(1.0 + e * e) + s) / a);
}

}  // namespace pmchemo

#pragma once

// Brute-force quadrature oracles for the closure tests. These integrate the
// actual ansatz functions numerically and stay independent of the table /
// interpolation machinery they are used to verify.

#include <cmath>

#include "pmchemo/velocity.hpp"

namespace oracle {

template <class F>
double integrate(const pmchemo::QuadratureRule1D& rule, F f) {
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * f(rule.nodes[k]);
  return s;
}

template <class F>
double integrate(const pmchemo::QuadratureRule2D& rule, F f) {
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * f(rule.nodes[k]);
  return s;
}

// normalized moments of exp(b*v) on a 1D domain
struct TiltedMoments1D {
  double u, w;
};

inline TiltedMoments1D tilted_moments(pmchemo::Domain1D dom, double b, int n = 96) {
  auto rule = pmchemo::quadrature(dom, n);
  double z = integrate(rule, [&](double v) { return std::exp(b * v); });
  double q = integrate(rule, [&](double v) { return v * std::exp(b * v); });
  double r = integrate(rule, [&](double v) { return v * v * std::exp(b * v); });
  return {q / z, r / z};
}

// normalized moments of exp(b.v) on a 2D domain
struct TiltedMoments2D {
  pmchemo::Vec2 u;
  pmchemo::SymMat2 w;
};

inline TiltedMoments2D tilted_moments(pmchemo::Domain2D dom, pmchemo::Vec2 b, int n = 96) {
  auto rule = pmchemo::quadrature(dom, n, n);
  double mx = -1e300;
  for (const auto& v : rule.nodes) mx = std::max(mx, b.dot(v));
  double z = 0, qx = 0, qy = 0, rxx = 0, rxy = 0, ryy = 0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const auto& v = rule.nodes[k];
    double e = rule.weights[k] * std::exp(b.dot(v) - mx);
    z += e;
    qx += e * v.x;
    qy += e * v.y;
    rxx += e * v.x * v.x;
    rxy += e * v.x * v.y;
    ryy += e * v.y * v.y;
  }
  return {{qx / z, qy / z}, {rxx / z, rxy / z, ryy / z}};
}

}  // namespace oracle

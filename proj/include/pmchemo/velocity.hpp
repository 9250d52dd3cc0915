#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace pmchemo {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Velocity space: cells move with unit speed, so V is the unit sphere.
// In 1D we use the projection V = [-1,1]; in 2D the unit disk parametrized by
// v(phi,r) = (sqrt(1-r^2) cos phi, sqrt(1-r^2) sin phi) with the dphi dr
// surface measure (so the full disk has measure 4*pi, not pi).
inline constexpr double kCv1D = 0.5;            // 1 / measure(V), 1D
inline constexpr double kCv2D = 1.0 / (4.0 * kPi);  // 1 / measure(V), 2D

enum class Domain1D { Full, Plus, Minus };

// Quadrants of the disk; first letter = sign of v_x, second = sign of v_y.
enum class Quadrant { PP = 0, MP = 1, MM = 2, PM = 3 };

enum class Domain2D { FullDisk, PP, MP, MM, PM };

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct SymMat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  SymMat2 operator+(const SymMat2& o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
  SymMat2 operator-(const SymMat2& o) const { return {xx - o.xx, xy - o.xy, yy - o.yy}; }
  SymMat2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }
  Vec2 apply(const Vec2& v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
};

struct Moments1D {
  double m0, m1, m2;
};

struct Moments2D {
  double m0;
  Vec2 m1;
  SymMat2 m2;
};

// Third-order basis moments, needed by the linear closure fits.
struct ThirdMoments2D {
  double xxx, xxy, xyy, yyy;
};

double domain_measure(Domain1D d);
double domain_measure(Domain2D d);

std::pair<int, int> quadrant_signs(Quadrant q);
Domain2D quadrant_domain(Quadrant q);
Quadrant domain_quadrant(Domain2D d);

// Exact moments of 1, v, v^2 (and v^3) over the domain.
Moments1D basis_moments_1d(Domain1D d);
double basis_third_moment_1d(Domain1D d);
Moments2D basis_moments_2d(Domain2D d);
ThirdMoments2D basis_third_moments_2d(Domain2D d);

struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

struct QuadratureRule2D {
  std::vector<Vec2> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes on [a,b].
QuadratureRule1D gauss_legendre(int n, double a, double b);

QuadratureRule1D quadrature(Domain1D d, int n);

// Tensor rule over (phi, r). The radial direction substitutes r = sin(theta)
// so that sqrt(1-r^2) factors become smooth and the rule converges spectrally
// for exponential ansatz integrands.
QuadratureRule2D quadrature(Domain2D d, int n_phi, int n_r);

// Gradient limiter: identity for ||g|| <= s, saturating beyond, with
// ||phi(g)|| <= s+1 for all g.
double limiter_phi(double g, double s);
Vec2 limiter_phi(const Vec2& g, double s);

}  // namespace pmchemo

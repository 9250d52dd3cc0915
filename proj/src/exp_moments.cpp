#include "pmchemo/exp_moments.hpp"

#include <cmath>

namespace pmchemo {

namespace {
constexpr double kSeriesCut = 0.25;
}

double langevin(double x) {
  if (std::abs(x) < kSeriesCut) {
    double x2 = x * x;
    return x * (1.0 / 3.0 +
                x2 * (-1.0 / 45.0 +
                      x2 * (2.0 / 945.0 +
                            x2 * (-1.0 / 4725.0 +
                                  x2 * (2.0 / 93555.0 + x2 * (-1382.0 / 638512875.0))))));
  }
  return 1.0 / std::tanh(x) - 1.0 / x;
}

double langevin_prime(double x) {
  if (std::abs(x) < kSeriesCut) {
    double x2 = x * x;
    return 1.0 / 3.0 +
           x2 * (-1.0 / 15.0 +
                 x2 * (2.0 / 189.0 +
                       x2 * (-1.0 / 675.0 +
                             x2 * (2.0 / 10395.0 + x2 * (-1382.0 / 58046625.0)))));
  }
  double s = std::sinh(x);
  return 1.0 / (x * x) - 1.0 / (s * s);
}

namespace {

// langevin(x)/x, stable at x = 0.
double langevin_over_x(double x) {
  if (std::abs(x) < kSeriesCut) {
    double x2 = x * x;
    return 1.0 / 3.0 +
           x2 * (-1.0 / 45.0 +
                 x2 * (2.0 / 945.0 +
                       x2 * (-1.0 / 4725.0 +
                             x2 * (2.0 / 93555.0 + x2 * (-1382.0 / 638512875.0)))));
  }
  return langevin(x) / x;
}

}  // namespace

double second_ratio(double x) {
  return 1.0 - 2.0 * langevin_over_x(x);
}

double second_ratio_prime(double x) {
  if (std::abs(x) < kSeriesCut) {
    double x2 = x * x;
    return x * (4.0 / 45.0 +
                x2 * (-16.0 / 945.0 +
                      x2 * (4.0 / 1575.0 +
                            x2 * (-32.0 / 93555.0 + x2 * (5528.0 / 127702575.0)))));
  }
  return (-2.0 * langevin_prime(x) + 2.0 * langevin_over_x(x)) / x;
}

double third_ratio(double x) {
  if (std::abs(x) < kSeriesCut) {
    double x2 = x * x;
    return x * (1.0 / 5.0 +
                x2 * (-1.0 / 105.0 +
                      x2 * (4.0 / 4725.0 +
                            x2 * (-13.0 / 155925.0 + x2 * (1786.0 / 212837625.0)))));
  }
  // d<t^2>/dx = <t^3> - <t^2><t>
  return second_ratio_prime(x) + second_ratio(x) * langevin(x);
}

ExpMoments1D half_plus_exp_moments(double b) {
  // Map V+ = [0,1] to t in [-1,1] via v = (1+t)/2; multiplier becomes x = b/2.
  double x = 0.5 * b;
  double l = langevin(x);
  double g = second_ratio(x);
  double lp = langevin_prime(x);
  double gp = second_ratio_prime(x);
  ExpMoments1D m;
  m.u = 0.5 * (1.0 + l);
  m.w = 0.25 * (1.0 + 2.0 * l + g);
  m.du_db = 0.25 * lp;
  m.dw_db = 0.125 * (2.0 * lp + gp);
  return m;
}

ExpMoments1D full_exp_moments(double b) {
  ExpMoments1D m;
  m.u = langevin(b);
  m.w = second_ratio(b);
  m.du_db = langevin_prime(b);
  m.dw_db = second_ratio_prime(b);
  return m;
}

}  // namespace pmchemo

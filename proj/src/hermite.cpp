#include "pmchemo/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace pmchemo {

HermiteCurve::HermiteCurve(std::vector<double> x, std::vector<double> y,
                           std::vector<double> dydx)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(dydx)) {
  if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size()) {
    throw std::invalid_argument("HermiteCurve: need >= 2 knots with matching arrays");
  }
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i] < x_[i + 1])) throw std::invalid_argument("HermiteCurve: knots not increasing");
  }
  // Fritsch-Carlson limiting per interval.
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    double delta = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    if (delta == 0.0) {
      d_[i] = 0.0;
      d_[i + 1] = 0.0;
      continue;
    }
    double a = d_[i] / delta;
    double b = d_[i + 1] / delta;
    if (a < 0.0) d_[i] = 0.0;
    if (b < 0.0) d_[i + 1] = 0.0;
    a = std::max(a, 0.0);
    b = std::max(b, 0.0);
    double s = a * a + b * b;
    if (s > 9.0) {
      double tau = 3.0 / std::sqrt(s);
      d_[i] = tau * a * delta;
      d_[i + 1] = tau * b * delta;
    }
  }
}

std::size_t HermiteCurve::interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double HermiteCurve::operator()(double x) const {
  std::size_t i = interval(x);
  double h = x_[i + 1] - x_[i];
  double t = (x - x_[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  double h10 = t3 - 2.0 * t2 + t;
  double h01 = -2.0 * t3 + 3.0 * t2;
  double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

}  // namespace pmchemo

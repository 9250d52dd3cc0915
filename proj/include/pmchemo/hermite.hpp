#pragma once

#include <cstddef>
#include <vector>

namespace pmchemo {

// Piecewise-cubic Hermite interpolant on sorted knots. Nodal slopes are
// limited with the Fritsch-Carlson criterion so that data monotone on an
// interval stays monotone after interpolation (no overshoot past the knots).
class HermiteCurve {
public:
  HermiteCurve() = default;
  HermiteCurve(std::vector<double> x, std::vector<double> y, std::vector<double> dydx);

  double operator()(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }
  bool empty() const { return x_.empty(); }

private:
  std::size_t interval(double x) const;

  std::vector<double> x_, y_, d_;
};

}  // namespace pmchemo

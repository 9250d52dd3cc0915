#pragma once

#include <array>
#include <utility>

#include "pmchemo/tables.hpp"
#include "pmchemo/velocity.hpp"

namespace pmchemo {

enum class ClosureKind { Linear, Entropy };

// One cell's half-moment state (1D).
struct HalfMoments {
  double rho_p = 0.0;
  double rho_m = 0.0;
  double q_p = 0.0;
  double q_m = 0.0;
};

// One cell's quarter-moment state (2D), indexed by Quadrant.
struct QuarterMoments {
  std::array<double, 4> rho{};
  std::array<Vec2, 4> q{};
};

// Linear ansatz a + b*v fitted to (rho, q) through the basis-moment matrix.
// Works for arbitrary inputs; the result may violate realizability (that is
// the documented flaw of the linear model).
double linear_half_closure_side(double rho, double q, Domain1D side);
std::pair<double, double> linear_half_closure(const HalfMoments& hm);

// Minimum-entropy ansatz exp(a + b*v); requires realizable input.
double entropy_half_closure_side(double rho, double q, int sign, const HalfClosureTable& table);
std::pair<double, double> entropy_half_closure(const HalfMoments& hm,
                                               const HalfClosureTable& table);

SymMat2 linear_quarter_closure_one(double rho, const Vec2& q, Quadrant quad);
std::array<SymMat2, 4> linear_quarter_closure(const QuarterMoments& qm);

SymMat2 entropy_quarter_closure_one(double rho, const Vec2& q, Quadrant quad,
                                    const QuarterClosureTable& table);
std::array<SymMat2, 4> entropy_quarter_closure(const QuarterMoments& qm,
                                               const QuarterClosureTable& table);

// Full-moment minimum-entropy (M1) closures.
double m1_full_closure_1d(double rho, double q, const M1Table1D& table);
SymMat2 m1_full_closure_2d(double rho, const Vec2& q, const M1Table2D& table);

}  // namespace pmchemo

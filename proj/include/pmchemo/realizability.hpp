#pragma once

#include <optional>
#include <string>

#include "pmchemo/closures.hpp"
#include "pmchemo/velocity.hpp"

namespace pmchemo {

inline constexpr double kDensityFloor = 1e-14;

struct RealizabilityReport {
  bool ok = true;
  double worst_violation = 0.0;
  int cell = -1;           // filled by field-level monitors
  std::string moment;      // which condition is violated worst

  void merge(double violation, const char* name, double tol) {
    if (violation > worst_violation) {
      worst_violation = violation;
      moment = name;
    }
    if (violation > tol) ok = false;
  }
};

// Half-moment conditions: rho >= 0, sign(q) matches the half-line,
// |q| <= rho, and (when the second moments are supplied) q^2/rho <= r <= +-q.
RealizabilityReport check_half(const HalfMoments& hm, std::optional<double> r_p,
                               std::optional<double> r_m, double tol);

// Quarter-moment conditions for one quadrant: rho >= 0, componentwise flux
// signs matching the quadrant, u = q/rho inside the quarter unit disk.
RealizabilityReport check_quarter(double rho, const Vec2& q, Quadrant quad, double tol);

// Full-moment conditions.
RealizabilityReport check_full_1d(double rho, double q, double tol);
RealizabilityReport check_full_2d(double rho, const Vec2& q, double tol);

// Cheap sequential projections applied after every update step. Outputs are
// exactly realizable and the maps are idempotent.
struct HalfProjection {
  double rho, q;
};
HalfProjection project_half(double rho, double q, int sign);

struct QuarterProjection {
  double rho;
  Vec2 q;
};
QuarterProjection project_quarter(double rho, Vec2 q, Quadrant quad);

HalfProjection project_full_1d(double rho, double q);
QuarterProjection project_full_2d(double rho, Vec2 q);

}  // namespace pmchemo

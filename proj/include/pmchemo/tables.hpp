#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pmchemo/hermite.hpp"
#include "pmchemo/velocity.hpp"

namespace pmchemo {

enum class TableKind { Half, Quarter, M1Line, M1Disk };

// --------------------------------------------------------------------------
// 1D half-line minimum-entropy table (V+; the minus side follows by mirror
// symmetry). Samples the exact forward maps u(b), w(b) on a symmetric
// log-spaced multiplier grid; inversion is monotone Hermite interpolation in
// u with exact nodal slopes. Beyond the sampled range the lookup switches to
// the asymptotic closure (beam w -> u as u -> 1, w -> 2u^2 as u -> 0) with a
// continuity correction that decays toward the limit.
// --------------------------------------------------------------------------
struct HalfClosureTable {
  std::vector<double> b, u, w, du_db, dw_db;

  void finalize();

  struct Eval {
    double b;
    double w;
  };
  Eval lookup(double u_plus) const;  // u in [0,1]

  double u_min() const { return u.front(); }
  double u_max() const { return u.back(); }

private:
  HermiteCurve b_of_u_, w_of_u_;
};

HalfClosureTable build_half_table(int n, double b_max);

// --------------------------------------------------------------------------
// Full-moment M1 table on V = [-1,1]. u(b) is odd and w(b) even, so only the
// b >= 0 branch is stored; queries go through |u|.
// --------------------------------------------------------------------------
struct M1Table1D {
  std::vector<double> b, u, w, du_db, dw_db;

  void finalize();

  struct Eval {
    double b;
    double w;
  };
  Eval lookup_abs(double abs_u) const;

  double u_max() const { return u.back(); }

private:
  HermiteCurve b_of_u_, w_of_u_;
};

M1Table1D build_m1_line_table(int n, double b_max);

// --------------------------------------------------------------------------
// Full-moment M1 table on the 2D disk. The closure is rotation-equivariant,
// so a scalar table in beta = |b| suffices: stores |u|(beta) and the
// normalized second moments parallel/perpendicular to b.
// --------------------------------------------------------------------------
struct M1Table2D {
  std::vector<double> beta, u, w_par, w_perp;
  std::vector<double> du, dw_par, dw_perp;  // d/dbeta, from covariance identities

  void finalize();

  struct Eval {
    double beta;
    double w_par;
    double w_perp;
  };
  Eval lookup_abs(double abs_u) const;

  double u_max() const { return u.back(); }

private:
  HermiteCurve beta_of_u_, wpar_of_u_, wperp_of_u_;
};

M1Table2D build_m1_disk_table(int n, double b_max);

// --------------------------------------------------------------------------
// Quarter-moment minimum-entropy table for the PP quadrant (other quadrants
// by reflection). Forward samples u(b), w(b) live on a rectangular grid of
// multipliers (log-spaced magnitudes, both signs, zero included per axis);
// the inverse map walks grid cells guided by a seed raster and inverts the
// bilinear interpolant inside a cell.
// --------------------------------------------------------------------------
struct QuarterClosureTable {
  std::vector<double> bx, by;  // axis grids, ascending, size K each
  // row-major samples, index = i*K + j with i along bx, j along by
  std::vector<double> ux, uy, wxx, wxy, wyy;

  void finalize();

  struct Eval {
    Vec2 b;
    SymMat2 w;
    Vec2 u_reached;  // forward image actually attained (= target when inside)
    bool inside;
  };
  Eval lookup(const Vec2& u_target) const;

  std::size_t K() const { return bx.size(); }

private:
  std::size_t idx(std::size_t i, std::size_t j) const { return i * K() + j; }
  bool invert_cell(std::size_t i, std::size_t j, const Vec2& target, double& s,
                   double& t) const;
  Eval eval_cell(std::size_t i, std::size_t j, double s, double t, bool inside) const;

  int seed_n_ = 0;
  std::vector<int> seed_;
};

QuarterClosureTable build_quarter_table(int n_per_axis, double b_max);

// --------------------------------------------------------------------------
// Serialization: versioned binary container (magic, kind, grid spec,
// row-major payload).
// --------------------------------------------------------------------------
using ClosureTable = std::variant<HalfClosureTable, QuarterClosureTable, M1Table1D, M1Table2D>;

TableKind table_kind(const ClosureTable& table);
void save_table(const std::string& path, const ClosureTable& table);
ClosureTable load_table(const std::string& path);

}  // namespace pmchemo

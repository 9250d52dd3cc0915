#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "pmchemo/closures.hpp"
#include "pmchemo/errors.hpp"
#include "pmchemo/exp_moments.hpp"
#include "pmchemo/tables.hpp"

using namespace pmchemo;

namespace {

const HalfClosureTable& half_table() {
  static HalfClosureTable t = build_half_table(2048, 500.0);
  return t;
}

const M1Table1D& m1_line_table() {
  static M1Table1D t = build_m1_line_table(2048, 500.0);
  return t;
}

const M1Table2D& m1_disk_table() {
  static M1Table2D t = build_m1_disk_table(512, 70.0);
  return t;
}

const QuarterClosureTable& quarter_table() {
  static QuarterClosureTable t = build_quarter_table(24, 15.0);
  return t;
}

// paper-printed forward maps of the exponential half-moment ansatz
double u_plus_printed(double b) {
  return ((b - 1.0) * std::exp(b) + 1.0) / (b * (std::exp(b) - 1.0));
}
double w_plus_printed(double b) {
  return ((b * b - 2.0 * b + 2.0) * std::exp(b) - 2.0) / (b * b * (std::exp(b) - 1.0));
}

}  // namespace

TEST_CASE("exponential moment maps match the printed formulas") {
  for (double b : {-8.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    ExpMoments1D m = half_plus_exp_moments(b);
    CHECK(m.u == doctest::Approx(u_plus_printed(b)).epsilon(1e-12));
    CHECK(m.w == doctest::Approx(w_plus_printed(b)).epsilon(1e-12));
  }
  ExpMoments1D at1 = half_plus_exp_moments(1.0);
  CHECK(at1.u == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
  CHECK(at1.w == doctest::Approx((std::exp(1.0) - 2.0) / (std::exp(1.0) - 1.0)).epsilon(1e-14));
}

TEST_CASE("exponential moment maps match the quadrature oracle") {
  for (double b : {-40.0, -7.3, -0.13, 0.0, 1e-8, 0.21, 3.7, 40.0}) {
    ExpMoments1D m = half_plus_exp_moments(b);
    auto om = oracle::tilted_moments(Domain1D::Plus, b);
    CHECK(m.u == doctest::Approx(om.u).epsilon(1e-12));
    CHECK(m.w == doctest::Approx(om.w).epsilon(1e-12));
    ExpMoments1D f = full_exp_moments(b);
    auto of = oracle::tilted_moments(Domain1D::Full, b);
    CHECK(f.u == doctest::Approx(of.u).scale(1.0).epsilon(1e-12));
    CHECK(f.w == doctest::Approx(of.w).epsilon(1e-12));
  }
}

TEST_CASE("exponential moment derivatives agree with finite differences") {
  for (double b : {-5.0, -0.2, 0.01, 0.7, 4.0}) {
    double h = 1e-6 * std::max(1.0, std::abs(b));
    ExpMoments1D lo = half_plus_exp_moments(b - h), hi = half_plus_exp_moments(b + h);
    ExpMoments1D mid = half_plus_exp_moments(b);
    CHECK(mid.du_db == doctest::Approx((hi.u - lo.u) / (2 * h)).epsilon(1e-7));
    CHECK(mid.dw_db == doctest::Approx((hi.w - lo.w) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("linear half closure: printed values and oracle") {
  // isotropic state on V+
  CHECK(linear_half_closure_side(1.0, 0.5, Domain1D::Plus) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // the printed realizability violation at rho=1, q=0
  double r0 = linear_half_closure_side(1.0, 0.0, Domain1D::Plus);
  CHECK(1.0 * r0 - 0.0 == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
  CHECK(linear_half_closure_side(0.0, 0.0, Domain1D::Plus) == 0.0);

  // oracle: fit the linear ansatz by quadrature and integrate v^2 against it
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rv(0.1, 5.0), qv(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    double rho = rv(rng);
    for (Domain1D d : {Domain1D::Plus, Domain1D::Minus}) {
      double q = qv(rng) * rho;
      auto rule = quadrature(d, 64);
      double m0 = oracle::integrate(rule, [](double) { return 1.0; });
      double m1 = oracle::integrate(rule, [](double v) { return v; });
      double m2 = oracle::integrate(rule, [](double v) { return v * v; });
      double det = m0 * m2 - m1 * m1;
      double a = (m2 * rho - m1 * q) / det;
      double b = (m0 * q - m1 * rho) / det;
      double r_oracle = oracle::integrate(rule, [&](double v) { return v * v * (a + b * v); });
      CHECK(linear_half_closure_side(rho, q, d) ==
            doctest::Approx(r_oracle).scale(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("linear half closure via the pair interface") {
  HalfMoments hm{1.0, 2.0, 0.5, -1.0};
  auto [rp, rm] = linear_half_closure(hm);
  CHECK(rp == doctest::Approx(linear_half_closure_side(1.0, 0.5, Domain1D::Plus)));
  CHECK(rm == doctest::Approx(linear_half_closure_side(2.0, -1.0, Domain1D::Minus)));
}

TEST_CASE("half table: stored samples are realizable and invertible") {
  const HalfClosureTable& t = half_table();
  REQUIRE(t.u.size() >= 2000);
  for (std::size_t i = 0; i < t.u.size(); ++i) {
    CHECK(t.w[i] >= t.u[i] * t.u[i] - 1e-15);
    CHECK(t.w[i] <= t.u[i] + 1e-15);
    if (i > 0) CHECK(t.u[i] > t.u[i - 1]);
  }
  // b = 0 sits at the grid centre and maps to the isotropic state
  std::size_t mid = t.b.size() / 2;
  CHECK(t.b[mid] == 0.0);
  CHECK(t.u[mid] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.lookup(0.5).w == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(t.lookup(0.5).b == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("half table round trip: |u(b(u)) - u| <= 1e-6") {
  const HalfClosureTable& t = half_table();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uv(0.01, 0.99);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    double u = uv(rng);
    double b = t.lookup(u).b;
    double u_back = half_plus_exp_moments(b).u;
    worst = std::max(worst, std::abs(u_back - u));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("entropy half closure: isotropic, printed, beam, errors") {
  const HalfClosureTable& t = half_table();
  // u = 1/2 -> w = 1/3
  CHECK(entropy_half_closure_side(2.0, 1.0, +1, t) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  // b = 1: u = 1/(e-1), w = (e-2)/(e-1)
  double u1 = 1.0 / (std::exp(1.0) - 1.0);
  double w1 = (std::exp(1.0) - 2.0) / (std::exp(1.0) - 1.0);
  CHECK(entropy_half_closure_side(1.0, u1, +1, t) == doctest::Approx(w1).epsilon(1e-9));
  // beam limit
  CHECK(entropy_half_closure_side(1.0, 1.0, +1, t) == doctest::Approx(1.0).epsilon(1e-12));
  // minus side mirrors
  CHECK(entropy_half_closure_side(1.0, -u1, -1, t) == doctest::Approx(w1).epsilon(1e-9));
  // unrealizable inputs
  CHECK_THROWS_AS(entropy_half_closure_side(1.0, 1.5, +1, t), RealizabilityError);
  CHECK_THROWS_AS(entropy_half_closure_side(1.0, -0.5, +1, t), RealizabilityError);
  CHECK_THROWS_AS(entropy_half_closure_side(-1.0, 0.0, +1, t), RealizabilityError);
  // degenerate zero state
  CHECK(entropy_half_closure_side(0.0, 0.0, +1, t) == 0.0);
}

TEST_CASE("entropy half closure satisfies strict realizability inside") {
  const HalfClosureTable& t = half_table();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uv(1e-3, 1.0 - 1e-3);
  for (int k = 0; k < 2000; ++k) {
    double u = uv(rng);
    double w = t.lookup(u).w;
    CHECK(w >= u * u);
    CHECK(w <= u);
    if (u > 0.02 && u < 0.98) {
      CHECK(w > u * u * (1.0 + 1e-9));
      CHECK(w < u * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("closures are positively homogeneous of degree one") {
  const HalfClosureTable& ht = half_table();
  const M1Table1D& mt = m1_line_table();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rv(0.2, 4.0), uv(-0.95, 0.95), lv(0.1, 30.0);
  for (int k = 0; k < 300; ++k) {
    double rho = rv(rng), u = uv(rng), lam = lv(rng);
    double q = u * rho;
    CHECK(linear_half_closure_side(lam * rho, lam * q, Domain1D::Plus) ==
          doctest::Approx(lam * linear_half_closure_side(rho, q, Domain1D::Plus))
              .scale(1.0)
              .epsilon(1e-12));
    CHECK(entropy_half_closure_side(lam * rho, lam * std::abs(q), +1, ht) ==
          doctest::Approx(lam * entropy_half_closure_side(rho, std::abs(q), +1, ht))
              .epsilon(1e-12));
    CHECK(m1_full_closure_1d(lam * rho, lam * q, mt) ==
          doctest::Approx(lam * m1_full_closure_1d(rho, q, mt)).epsilon(1e-12));
  }
}

TEST_CASE("half table serialization round trip") {
  HalfClosureTable t = build_half_table(256, 50.0);
  std::string path = "half_table_test.bin";
  save_table(path, ClosureTable{t});
  ClosureTable back = load_table(path);
  REQUIRE(std::holds_alternative<HalfClosureTable>(back));
  const auto& tb = std::get<HalfClosureTable>(back);
  REQUIRE(tb.b.size() == t.b.size());
  for (std::size_t i = 0; i < t.b.size(); ++i) {
    CHECK(tb.b[i] == t.b[i]);
    CHECK(tb.u[i] == t.u[i]);
    CHECK(tb.w[i] == t.w[i]);
  }
  CHECK(tb.lookup(0.37).w == t.lookup(0.37).w);
  std::remove(path.c_str());
}

TEST_CASE("linear quarter closure: isotropic state and oracle") {
  // isotropic on PP: u = (1/2, 1/2)
  SymMat2 r = linear_quarter_closure_one(1.0, {0.5, 0.5}, Quadrant::PP);
  CHECK(r.xx == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(r.xy == doctest::Approx(2.0 / (3.0 * kPi)).epsilon(1e-13));
  CHECK(r.yy == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  SymMat2 zero = linear_quarter_closure_one(0.0, {0.0, 0.0}, Quadrant::MM);
  CHECK(zero.xx == 0.0);
  CHECK(zero.xy == 0.0);
  CHECK(zero.yy == 0.0);

  // oracle: the fitted ansatz must reproduce its own moments and second moment
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rv(0.5, 3.0), uv(0.05, 0.5);
  for (int rep = 0; rep < 20; ++rep) {
    for (int qi = 0; qi < 4; ++qi) {
      Quadrant quad = static_cast<Quadrant>(qi);
      auto [sx, sy] = quadrant_signs(quad);
      double rho = rv(rng);
      Vec2 q{sx * uv(rng) * rho, sy * uv(rng) * rho};
      auto rule = quadrature(quadrant_domain(quad), 64, 64);
      // independent fit from quadrature-built normal equations
      double m0 = oracle::integrate(rule, [](Vec2) { return 1.0; });
      double m1x = oracle::integrate(rule, [](Vec2 v) { return v.x; });
      double m1y = oracle::integrate(rule, [](Vec2 v) { return v.y; });
      double mxx = oracle::integrate(rule, [](Vec2 v) { return v.x * v.x; });
      double mxy = oracle::integrate(rule, [](Vec2 v) { return v.x * v.y; });
      double myy = oracle::integrate(rule, [](Vec2 v) { return v.y * v.y; });
      // solve 3x3 (Gaussian elimination on a small dense system)
      double A[3][4] = {{m0, m1x, m1y, rho},
                        {m1x, mxx, mxy, q.x},
                        {m1y, mxy, myy, q.y}};
      for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row) {
          if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
        }
        std::swap(A[col], A[piv]);
        for (int row = 0; row < 3; ++row) {
          if (row == col) continue;
          double f = A[row][col] / A[col][col];
          for (int c2 = col; c2 < 4; ++c2) A[row][c2] -= f * A[col][c2];
        }
      }
      double a = A[0][3] / A[0][0], bx = A[1][3] / A[1][1], by = A[2][3] / A[2][2];
      auto ansatz = [&](Vec2 v) { return a + bx * v.x + by * v.y; };
      SymMat2 got = linear_quarter_closure_one(rho, q, quad);
      CHECK(got.xx == doctest::Approx(oracle::integrate(rule, [&](Vec2 v) {
              return v.x * v.x * ansatz(v);
            })).scale(1.0).epsilon(1e-11));
      CHECK(got.xy == doctest::Approx(oracle::integrate(rule, [&](Vec2 v) {
              return v.x * v.y * ansatz(v);
            })).scale(1.0).epsilon(1e-11));
      CHECK(got.yy == doctest::Approx(oracle::integrate(rule, [&](Vec2 v) {
              return v.y * v.y * ansatz(v);
            })).scale(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("quarter table: forward samples agree with a finer oracle") {
  const QuarterClosureTable& t = quarter_table();
  std::size_t K = t.K();
  // a few interior nodes, moderate multipliers
  for (std::size_t i : {K / 2, K / 2 + 3, K - 5}) {
    for (std::size_t j : {K / 2, K / 2 - 4, K - 5}) {
      Vec2 b{t.bx[i], t.by[j]};
      if (std::abs(b.x) > 20 || std::abs(b.y) > 20) continue;
      auto om = oracle::tilted_moments(Domain2D::PP, b, 128);
      std::size_t id = i * K + j;
      CHECK(t.ux[id] == doctest::Approx(om.u.x).epsilon(1e-8));
      CHECK(t.uy[id] == doctest::Approx(om.u.y).epsilon(1e-8));
      CHECK(t.wxx[id] == doctest::Approx(om.w.xx).epsilon(1e-8));
      CHECK(t.wxy[id] == doctest::Approx(om.w.xy).epsilon(1e-8));
      CHECK(t.wyy[id] == doctest::Approx(om.w.yy).epsilon(1e-8));
    }
  }
  // all stored u lie inside the quarter disk
  for (std::size_t id = 0; id < K * K; ++id) {
    CHECK(t.ux[id] > 0.0);
    CHECK(t.uy[id] > 0.0);
    CHECK(std::hypot(t.ux[id], t.uy[id]) < 1.0);
  }
}

TEST_CASE("entropy quarter closure: isotropic point and reflections") {
  const QuarterClosureTable& t = quarter_table();
  // b = (0,0): u = (1/2,1/2), w = m2/m0 of the quadrant
  SymMat2 r = entropy_quarter_closure_one(1.0, {0.5, 0.5}, Quadrant::PP, t);
  CHECK(r.xx == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(r.xy == doctest::Approx(2.0 / (3.0 * kPi)).epsilon(1e-9));
  CHECK(r.yy == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  // reflection property between PP and MP
  Vec2 u{0.31, 0.42};
  SymMat2 rpp = entropy_quarter_closure_one(1.0, u, Quadrant::PP, t);
  SymMat2 rmp = entropy_quarter_closure_one(1.0, {-u.x, u.y}, Quadrant::MP, t);
  CHECK(rmp.xx == doctest::Approx(rpp.xx).epsilon(1e-13));
  CHECK(rmp.xy == doctest::Approx(-rpp.xy).epsilon(1e-13));
  CHECK(rmp.yy == doctest::Approx(rpp.yy).epsilon(1e-13));

  CHECK_THROWS_AS(entropy_quarter_closure_one(1.0, {-0.2, 0.2}, Quadrant::PP, t),
                  RealizabilityError);
  CHECK_THROWS_AS(entropy_quarter_closure_one(1.0, {0.9, 0.9}, Quadrant::PP, t),
                  RealizabilityError);
}

TEST_CASE("quarter table round trip at build resolution") {
  const QuarterClosureTable& t = quarter_table();
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> bv(-12.0, 12.0);
  double worst = 0.0;
  for (int k = 0; k < 60; ++k) {
    Vec2 b{bv(rng), bv(rng)};
    Vec2 u = oracle::tilted_moments(Domain2D::PP, b, 96).u;
    auto e = t.lookup(u);
    REQUIRE(e.inside);
    Vec2 u_back = oracle::tilted_moments(Domain2D::PP, e.b, 96).u;
    worst = std::max({worst, std::abs(u_back.x - u.x), std::abs(u_back.y - u.y)});
  }
  // coarse test table (24 samples/axis); the default build is checked in the
  // acceptance suite at 1e-4
  CHECK(worst <= 5e-3);
}

TEST_CASE("m1 1d closure: limits and round trip") {
  const M1Table1D& t = m1_line_table();
  CHECK(m1_full_closure_1d(3.0, 0.0, t) == doctest::Approx(1.0).epsilon(1e-10));  // 3 * 1/3
  CHECK(m1_full_closure_1d(1.0, 1.0, t) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m1_full_closure_1d(1.0, -1.0, t) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(m1_full_closure_1d(1.0, 1.5, t), RealizabilityError);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uv(-0.99, 0.99);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    double u = uv(rng);
    double b = t.lookup_abs(std::abs(u)).b;
    double u_back = full_exp_moments(b).u;
    worst = std::max(worst, std::abs(u_back - std::abs(u)));
  }
  CHECK(worst <= 1e-6);

  // w is even in u
  CHECK(m1_full_closure_1d(1.0, 0.4, t) == doctest::Approx(m1_full_closure_1d(1.0, -0.4, t)));
}

TEST_CASE("m1 2d closure: isotropic, rotation equivariance, ordering") {
  const M1Table2D& t = m1_disk_table();
  SymMat2 iso = m1_full_closure_2d(1.0, {0.0, 0.0}, t);
  CHECK(iso.xx == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(iso.xy == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(iso.yy == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> av(0.0, 2.0 * kPi), uv(0.05, 0.9);
  for (int k = 0; k < 200; ++k) {
    double umag = uv(rng), th = av(rng);
    Vec2 q{umag * std::cos(th), umag * std::sin(th)};
    SymMat2 r = m1_full_closure_2d(1.0, q, t);
    // rotate q by phi and compare with the rotated tensor
    double phi = av(rng);
    double cp = std::cos(phi), sp = std::sin(phi);
    Vec2 qr{cp * q.x - sp * q.y, sp * q.x + cp * q.y};
    SymMat2 rr = m1_full_closure_2d(1.0, qr, t);
    double exx = cp * cp * r.xx - 2 * cp * sp * r.xy + sp * sp * r.yy;
    double exy = cp * sp * (r.xx - r.yy) + (cp * cp - sp * sp) * r.xy;
    double eyy = sp * sp * r.xx + 2 * cp * sp * r.xy + cp * cp * r.yy;
    CHECK(rr.xx == doctest::Approx(exx).scale(1.0).epsilon(1e-10));
    CHECK(rr.xy == doctest::Approx(exy).scale(1.0).epsilon(1e-10));
    CHECK(rr.yy == doctest::Approx(eyy).scale(1.0).epsilon(1e-10));
  }

  // w_par >= w_perp away from the isotropic point
  for (double a : {0.1, 0.3, 0.6, 0.9}) {
    auto e = t.lookup_abs(a);
    CHECK(e.w_par >= e.w_perp);
  }
}

TEST_CASE("m1 2d table samples agree with a finer oracle") {
  const M1Table2D& t = m1_disk_table();
  for (double beta : {0.5, 2.0, 10.0, 40.0}) {
    auto lo = std::lower_bound(t.beta.begin(), t.beta.end(), beta);
    std::size_t i = static_cast<std::size_t>(lo - t.beta.begin());
    REQUIRE(i < t.beta.size());
    auto om = oracle::tilted_moments(Domain2D::FullDisk, {t.beta[i], 0.0}, 160);
    CHECK(t.u[i] == doctest::Approx(om.u.x).epsilon(1e-8));
    CHECK(t.w_par[i] == doctest::Approx(om.w.xx).epsilon(1e-8));
    CHECK(t.w_perp[i] == doctest::Approx(om.w.yy).epsilon(1e-8));
  }
}

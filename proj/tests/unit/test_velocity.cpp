#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracle.hpp"
#include "pmchemo/velocity.hpp"

using namespace pmchemo;

TEST_CASE("1d basis moments") {
  Moments1D plus = basis_moments_1d(Domain1D::Plus);
  CHECK(plus.m0 == 1.0);
  CHECK(plus.m1 == 0.5);
  CHECK(plus.m2 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  Moments1D minus = basis_moments_1d(Domain1D::Minus);
  CHECK(minus.m0 == 1.0);
  CHECK(minus.m1 == -0.5);
  CHECK(minus.m2 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  Moments1D full = basis_moments_1d(Domain1D::Full);
  CHECK(full.m0 == 2.0);
  CHECK(full.m1 == 0.0);
  CHECK(full.m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("1d basis moments agree with the quadrature oracle") {
  for (Domain1D d : {Domain1D::Full, Domain1D::Plus, Domain1D::Minus}) {
    auto rule = quadrature(d, 64);
    Moments1D m = basis_moments_1d(d);
    CHECK(oracle::integrate(rule, [](double) { return 1.0; }) == doctest::Approx(m.m0).epsilon(1e-13));
    CHECK(oracle::integrate(rule, [](double v) { return v; }) ==
          doctest::Approx(m.m1).epsilon(1e-13));
    CHECK(oracle::integrate(rule, [](double v) { return v * v; }) ==
          doctest::Approx(m.m2).epsilon(1e-13));
    CHECK(oracle::integrate(rule, [](double v) { return v * v * v; }) ==
          doctest::Approx(basis_third_moment_1d(d)).epsilon(1e-13));
  }
}

TEST_CASE("2d basis moments: quadrant closed forms") {
  Moments2D pp = basis_moments_2d(Domain2D::PP);
  CHECK(pp.m0 == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(pp.m1.x == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(pp.m1.y == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(pp.m2.xx == doctest::Approx(kPi / 3).epsilon(1e-15));
  CHECK(pp.m2.xy == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(pp.m2.yy == doctest::Approx(kPi / 3).epsilon(1e-15));

  Moments2D mm = basis_moments_2d(Domain2D::MM);
  CHECK(mm.m1.x == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(mm.m1.y == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(mm.m2.xy == doctest::Approx(2.0 / 3.0).epsilon(1e-15));  // sign = product of signs

  Moments2D mp = basis_moments_2d(Domain2D::MP);
  CHECK(mp.m2.xy == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));

  Moments2D disk = basis_moments_2d(Domain2D::FullDisk);
  CHECK(disk.m0 == doctest::Approx(4 * kPi).epsilon(1e-15));
  CHECK(disk.m1.x == 0.0);
  CHECK(disk.m1.y == 0.0);
  CHECK(disk.m2.xx == doctest::Approx(4 * kPi / 3).epsilon(1e-15));
  CHECK(disk.m2.xy == 0.0);
  CHECK(disk.m0 * kCv2D == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("2d basis moments agree with the quadrature oracle") {
  for (Domain2D d : {Domain2D::PP, Domain2D::MP, Domain2D::MM, Domain2D::PM,
                     Domain2D::FullDisk}) {
    auto rule = quadrature(d, 64, 64);
    Moments2D m = basis_moments_2d(d);
    ThirdMoments2D t = basis_third_moments_2d(d);
    CHECK(oracle::integrate(rule, [](Vec2) { return 1.0; }) ==
          doctest::Approx(m.m0).epsilon(1e-12));
    CHECK(oracle::integrate(rule, [](Vec2 v) { return v.x; }) ==
          doctest::Approx(m.m1.x).scale(1.0).epsilon(1e-12));
    CHECK(oracle::integrate(rule, [](Vec2 v) { return v.y; }) ==
          doctest::Approx(m.m1.y).scale(1.0).epsilon(1e-12));
    CHECK(oracle::integrate(rule, [](Vec2 v) { return v.x * v.x; }) ==
          doctest::Approx(m.m2.xx).epsilon(1e-12));
    CHECK(oracle::integrate(rule, [](Vec2 v) { return v.x * v.y; }) ==
          doctest::Approx(m.m2.xy).scale(1.0).epsilon(1e-12));
    CHECK(oracle::integrate(rule, [](Vec2 v) { return v.y * v.y; }) ==
          doctest::Approx(m.m2.yy).epsilon(1e-12));
    CHECK(oracle::integrate(rule, [](Vec2 v) { return v.x * v.x * v.x; }) ==
          doctest::Approx(t.xxx).scale(1.0).epsilon(1e-12));
    CHECK(oracle::integrate(rule, [](Vec2 v) { return v.x * v.x * v.y; }) ==
          doctest::Approx(t.xxy).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("quadrant moments sum to the full disk") {
  Moments2D sum{};
  for (Domain2D d : {Domain2D::PP, Domain2D::MP, Domain2D::MM, Domain2D::PM}) {
    Moments2D m = basis_moments_2d(d);
    sum.m0 += m.m0;
    sum.m1 = sum.m1 + m.m1;
    sum.m2 = sum.m2 + m.m2;
  }
  Moments2D disk = basis_moments_2d(Domain2D::FullDisk);
  CHECK(sum.m0 == doctest::Approx(disk.m0).epsilon(1e-12));
  CHECK(sum.m1.x == doctest::Approx(disk.m1.x).scale(1.0).epsilon(1e-12));
  CHECK(sum.m1.y == doctest::Approx(disk.m1.y).scale(1.0).epsilon(1e-12));
  CHECK(sum.m2.xx == doctest::Approx(disk.m2.xx).epsilon(1e-12));
  CHECK(sum.m2.xy == doctest::Approx(disk.m2.xy).scale(1.0).epsilon(1e-12));
  CHECK(sum.m2.yy == doctest::Approx(disk.m2.yy).epsilon(1e-12));
}

TEST_CASE("quadrature weights: positivity and measure") {
  for (Domain1D d : {Domain1D::Full, Domain1D::Plus, Domain1D::Minus}) {
    auto rule = quadrature(d, 48);
    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(domain_measure(d)).epsilon(1e-12));
  }
  for (Domain2D d : {Domain2D::PP, Domain2D::FullDisk}) {
    auto rule = quadrature(d, 48, 48);
    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(domain_measure(d)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(quadrature(Domain1D::Plus, 1), std::invalid_argument);
  CHECK_THROWS_AS(quadrature(Domain2D::PP, 1, 64), std::invalid_argument);
}

TEST_CASE("quadrature convergence spot checks") {
  auto plus = quadrature(Domain1D::Plus, 64);
  CHECK(oracle::integrate(plus, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-12));
  auto full = quadrature(Domain1D::Full, 64);
  CHECK(oracle::integrate(full, [](double v) { return v * v; }) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  auto pp = quadrature(Domain2D::PP, 64, 64);
  CHECK(oracle::integrate(pp, [](Vec2 v) { return v.x; }) ==
        doctest::Approx(kPi / 2).epsilon(1e-10));
}

TEST_CASE("limiter: printed examples") {
  CHECK(limiter_phi(0.0, 0.7) == 0.0);
  CHECK(limiter_phi(1.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  Vec2 r = limiter_phi(Vec2{3.0, 4.0}, 1.0);
  double expected_norm = 4.0 / std::sqrt(17.0) + 1.0;
  CHECK(r.norm() == doctest::Approx(expected_norm).epsilon(1e-12));
  CHECK(r.x / r.norm() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r.y / r.norm() == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("limiter: bound, identity branch, continuity") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> val(-30.0, 30.0), sv(0.0, 3.0);
  for (int k = 0; k < 2000; ++k) {
    double s = sv(rng);
    Vec2 g{val(rng), val(rng)};
    Vec2 out = limiter_phi(g, s);
    CHECK(out.norm() <= s + 1.0 + 1e-12);
    if (g.norm() <= s) {
      CHECK(out.x == g.x);
      CHECK(out.y == g.y);
    }
    double g1 = val(rng);
    double o1 = limiter_phi(g1, s);
    CHECK(std::abs(o1) <= s + 1.0 + 1e-12);
    if (std::abs(g1) <= s) CHECK(o1 == g1);
  }
  // both branches agree at ||g|| = s
  for (double s : {0.5, 1.0, 2.0}) {
    double below = limiter_phi(s * (1.0 - 1e-12), s);
    double above = limiter_phi(s * (1.0 + 1e-12), s);
    CHECK(below == doctest::Approx(above).epsilon(1e-9));
  }
}

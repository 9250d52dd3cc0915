#include <doctest.h>

#include <cmath>
#include <random>

#include "pmchemo/realizability.hpp"

using namespace pmchemo;

TEST_CASE("check_half: printed examples") {
  // isotropic moments: 1/4 <= 1/3 <= 1/2
  RealizabilityReport ok = check_half({1.0, 1.0, 0.5, -0.5}, 1.0 / 3.0, 1.0 / 3.0, 0.0);
  CHECK(ok.ok);

  // the linear-closure violation w < u^2 at rho=1, q=0
  RealizabilityReport bad = check_half({1.0, 1.0, 0.0, 0.0}, -1.0 / 6.0, -1.0 / 6.0, 1e-12);
  CHECK_FALSE(bad.ok);
  CHECK(bad.worst_violation == doctest::Approx(1.0 / 6.0));

  // beam: equality everywhere
  RealizabilityReport beam = check_half({1.0, 1.0, 1.0, -1.0}, 1.0, 1.0, 0.0);
  CHECK(beam.ok);
}

TEST_CASE("check_half: individual conditions") {
  CHECK_FALSE(check_half({-1.0, 1.0, 0.0, 0.0}, {}, {}, 1e-12).ok);
  CHECK_FALSE(check_half({1.0, 1.0, -0.1, 0.0}, {}, {}, 1e-12).ok);
  CHECK_FALSE(check_half({1.0, 1.0, 0.0, 0.1}, {}, {}, 1e-12).ok);
  CHECK_FALSE(check_half({1.0, 1.0, 1.1, 0.0}, {}, {}, 1e-12).ok);
  CHECK(check_half({1.0, 1.0, 1.0 + 1e-13, 0.0}, {}, {}, 1e-12).ok);  // within tol
}

TEST_CASE("project_half: printed examples") {
  HalfProjection a = project_half(1.0, -0.3, +1);
  CHECK(a.rho == 1.0);
  CHECK(a.q == 0.0);

  HalfProjection b = project_half(1e-20, 0.0, +1);
  CHECK(b.rho == 1e-14);
  CHECK(b.q == 0.0);

  HalfProjection c = project_half(0.5, 0.9, +1);
  CHECK(c.rho == 0.5);
  CHECK(c.q == 0.5);

  HalfProjection d = project_half(0.5, -0.9, -1);
  CHECK(d.q == -0.5);
}

TEST_CASE("project_quarter: sign clamp and hull scaling") {
  QuarterProjection a = project_quarter(1.0, {-0.1, 0.4}, Quadrant::PP);
  CHECK(a.rho == 1.0);
  CHECK(a.q.x == 0.0);
  CHECK(a.q.y == 0.4);

  QuarterProjection b = project_quarter(1.0, {0.9, 0.9}, Quadrant::PP);
  CHECK(b.q.norm() <= 1.0);
  CHECK(b.q.x == doctest::Approx(b.q.y));  // direction preserved
  CHECK(b.q.x > 0.6);

  QuarterProjection c = project_quarter(1.0, {0.3, 0.2}, Quadrant::PP);
  CHECK(c.q.x == 0.3);
  CHECK(c.q.y == 0.2);
}

TEST_CASE("projections are idempotent and produce admissible states") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> rv(-0.5, 3.0), qv(-4.0, 4.0);
  for (int k = 0; k < 5000; ++k) {
    double rho = rv(rng), q = qv(rng);
    for (int sign : {+1, -1}) {
      HalfProjection p1 = project_half(rho, q, sign);
      HalfProjection p2 = project_half(p1.rho, p1.q, sign);
      CHECK(p1.rho == p2.rho);
      CHECK(p1.q == p2.q);
      HalfMoments hm = sign > 0 ? HalfMoments{p1.rho, 1.0, p1.q, 0.0}
                                : HalfMoments{1.0, p1.rho, 0.0, p1.q};
      CHECK(check_half(hm, {}, {}, 0.0).ok);
    }
    Vec2 qq{qv(rng), qv(rng)};
    for (int qi = 0; qi < 4; ++qi) {
      Quadrant quad = static_cast<Quadrant>(qi);
      QuarterProjection p1 = project_quarter(rho, qq, quad);
      QuarterProjection p2 = project_quarter(p1.rho, p1.q, quad);
      CHECK(p1.rho == p2.rho);
      CHECK(p1.q.x == p2.q.x);
      CHECK(p1.q.y == p2.q.y);
      CHECK(check_quarter(p1.rho, p1.q, quad, 0.0).ok);
    }
    HalfProjection f1 = project_full_1d(rho, q);
    HalfProjection f2 = project_full_1d(f1.rho, f1.q);
    CHECK(f1.rho == f2.rho);
    CHECK(f1.q == f2.q);
    CHECK(check_full_1d(f1.rho, f1.q, 0.0).ok);
    QuarterProjection g1 = project_full_2d(rho, qq);
    QuarterProjection g2 = project_full_2d(g1.rho, g1.q);
    CHECK(g1.rho == g2.rho);
    CHECK(g1.q.x == g2.q.x);
    CHECK(g1.q.y == g2.q.y);
    CHECK(check_full_2d(g1.rho, g1.q, 0.0).ok);
  }
}

TEST_CASE("projection leaves strictly admissible states untouched") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> rv(0.1, 2.0), fv(0.0, 0.99);
  for (int k = 0; k < 2000; ++k) {
    double rho = rv(rng);
    double q = fv(rng) * rho;
    HalfProjection p = project_half(rho, q, +1);
    CHECK(p.rho == rho);
    CHECK(p.q == q);
    double ang = fv(rng) * kPi / 2;
    Vec2 qq{fv(rng) * rho * std::cos(ang), fv(rng) * rho * std::sin(ang)};
    QuarterProjection pq = project_quarter(rho, qq, Quadrant::PP);
    CHECK(pq.rho == rho);
    CHECK(pq.q.x == qq.x);
    CHECK(pq.q.y == qq.y);
  }
}

#include "wavelab/profile.hpp"
#include "wavelab/quadrature.hpp"
#include "wavelab/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace wavelab;

TEST_CASE("bump values and support") {
  BumpProfile phi = BumpProfile::bump(1.0, 2.0);
  CHECK(phi(1.5) == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
  CHECK(phi(1.0) == 0.0);
  CHECK(phi(2.0) == 0.0);
  CHECK(phi(0.3) == 0.0);
  CHECK(phi(1.2) == doctest::Approx(std::exp(-1.0 / (0.2 * 0.8))).epsilon(1e-14));
  CHECK(phi.tilted(2.0)(1.5) == doctest::Approx(2.25 * std::exp(-4.0)).epsilon(1e-14));
}

TEST_CASE("jets agree with finite differences") {
  BumpProfile phi = BumpProfile::bump(1.0, 2.0);
  double s = 1.37, d = 1e-4;
  Jet j = phi.jet(s, 3);
  CHECK(j.value() == doctest::Approx(phi(s)).epsilon(1e-14));
  CHECK(j.deriv(1) == doctest::Approx((phi(s + d) - phi(s - d)) / (2 * d)).epsilon(1e-6));
  CHECK(j.deriv(2) == doctest::Approx((phi(s + d) - 2 * phi(s) + phi(s - d)) / (d * d)).epsilon(1e-4));

  BumpProfile pl = BumpProfile::plateau(1.0, 8.0);
  for (double x : {1.3, 1.9, 4.5, 6.0}) {
    double fd = (pl(x + d) - pl(x - d)) / (2 * d);
    CHECK(pl.jet(x, 1).deriv(1) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("plateau and step") {
  BumpProfile pl = BumpProfile::plateau(1.0, 8.0);
  CHECK(pl(2.0) == 1.0);
  CHECK(pl(3.0) == 1.0);
  CHECK(pl(4.0) == 1.0);
  CHECK(pl(1.5) > 0.0);
  CHECK(pl(1.5) < 1.0);
  CHECK(pl(8.5) == 0.0);

  BumpProfile chi = BumpProfile::step(1.0);
  CHECK(chi(100.0) == 1.0);
  CHECK(chi(0.9) == 0.0);
  // int chi_a' = 1
  BumpProfile dchi = BumpProfile::step_derivative(1.0);
  QuadRule q = composite_gauss(16, 20, 1.0, 2.0);
  double total = 0.0;
  for (size_t i = 0; i < q.x.size(); ++i) total += q.w[i] * dchi(q.x[i]);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cover and validation") {
  BumpProfile phi = BumpProfile::bump(1.0, 2.0);
  BumpProfile cover = plateau_cover(phi);
  for (double s = 1.0; s <= 2.0; s += 0.05) CHECK(cover(s) == 1.0);
  CHECK_THROWS_AS(BumpProfile::bump(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(BumpProfile::plateau(1.0, 3.0), DomainError);
  CHECK(parse_profile_kind("plateau") == ProfileKind::plateau);
  CHECK_THROWS(parse_profile_kind("gauss"));
}

TEST_CASE("quadrature rules") {
  QuadRule g = gauss_legendre(10, 0.0, 2.0);
  double s = 0.0;
  for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 19);
  CHECK(s == doctest::Approx(std::pow(2.0, 20) / 20.0).epsilon(1e-13));
  QuadRule sp = simpson(10, 0.0, 1.0);
  double c = 0.0;
  for (size_t i = 0; i < sp.x.size(); ++i) c += sp.w[i] * sp.x[i] * sp.x[i] * sp.x[i];
  CHECK(c == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS(gauss_legendre(7, 0.0, 1.0));
}

#include "wavelab/fit.hpp"
#include "wavelab/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace wavelab;

namespace {

const BesselOrder nu1(1.0);
const BesselOrder nu_half(0.5);

// J_nu(z) by its power series in long double; fine for z <= 12.
double series_J(double nu, double z) {
  long double x = 0.5L * z, term = std::pow(x, (long double)nu) / std::tgamma((long double)nu + 1.0L);
  long double sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= -x * x / (k * (k + nu));
    sum += term;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("half-integer closed forms") {
  CHECK(std::abs(bessel_J(nu_half, M_PI)) < 1e-15);
  for (double z : {0.3, 1.0, 4.0, 17.0})
    CHECK(bessel_J(nu_half, z) == doctest::Approx(std::sqrt(2.0 / (M_PI * z)) * std::sin(z)).epsilon(1e-13));
  cplx h = hankel_H(nu_half, Sign::plus, 1.0);
  cplx expect = std::sqrt(2.0 / M_PI) * std::exp(cplx(0.0, 1.0 - M_PI / 2.0));
  CHECK(std::abs(h - expect) < 1e-13);
}

TEST_CASE("J1 against the power series and a frozen value") {
  // mpmath besselj(1, 5)
  CHECK(bessel_J(nu1, 5.0) == doctest::Approx(-0.32757913759146522).epsilon(1e-13));
  for (double z : {0.01, 0.5, 2.0, 5.0, 9.5}) CHECK(bessel_J(nu1, z) == doctest::Approx(series_J(1.0, z)).epsilon(1e-11));
  CHECK(std::abs(caljnu(nu1, 1e-9)) < 1e-17);
}

TEST_CASE("Hankel functions") {
  // mpmath besselj(1, 8), bessely(1, 8)
  cplx h = hankel_H(nu1, Sign::plus, 8.0);
  CHECK(h.real() == doctest::Approx(0.23463634685391462).epsilon(1e-12));
  CHECK(h.imag() == doctest::Approx(-0.15806046173124749).epsilon(1e-12));
  for (double z : {0.7, 3.0, 25.0}) {
    cplx avg = 0.5 * (hankel_H(nu1, Sign::plus, z) + hankel_H(nu1, Sign::minus, z));
    CHECK(std::abs(avg - bessel_J(nu1, z)) < 1e-14);
  }
  double z = 3.3, dz = 1e-5;
  cplx fd = (hankel_H(nu1, Sign::plus, z + dz) - hankel_H(nu1, Sign::plus, z - dz)) / (2 * dz);
  CHECK(std::abs(hankel_H_deriv(nu1, Sign::plus, z) - fd) < 1e-8);
  CHECK_THROWS_AS(hankel_H(nu1, Sign::plus, 0.0), DomainError);
}

TEST_CASE("z^nu J_nu and its derivatives") {
  CHECK(caljnu(nu1, 3.0) == doctest::Approx(3.0 * bessel_J(nu1, 3.0)).epsilon(1e-14));
  // d/dz (z J1) = z J0; mpmath 0.5 * besselj(0, 0.5)
  CHECK(caljnu_deriv(nu1, 1, 0.5) == doctest::Approx(0.46923490362040645).epsilon(1e-12));
  double z = 0.5, dz = 1e-4;
  double fd = (caljnu_deriv(nu1, 1, z + dz) - caljnu_deriv(nu1, 1, z - dz)) / (2 * dz);
  CHECK(caljnu_deriv(nu1, 2, z) == doctest::Approx(fd).epsilon(1e-7));

  // Vanishing order n - 2 = 2 at the origin.
  std::vector<double> x, y;
  for (double s = 1e-4; s < 1e-2; s *= 1.5) {
    x.push_back(s);
    y.push_back(caljnu(nu1, s));
  }
  CHECK(fit_power_law(x, y).exponent == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("symbol split") {
  // mpmath: 10 H1(10) e^{-10 i} / 2
  SymbolPair p = symbol_split(nu1, 10.0);
  CHECK(p.b_plus.real() == doctest::Approx(-0.85973195653356889).epsilon(1e-11));
  CHECK(p.b_plus.imag() == doctest::Approx(-0.92645830544377327).epsilon(1e-11));
  CHECK(std::abs(p.recombine() - caljnu(nu1, 10.0)) < 1e-12);
  CHECK(std::abs(p.b_minus - std::conj(p.b_plus)) < 1e-13);

  // Symbols of order (n-3)/2.
  std::vector<double> x, y;
  for (double z = 1.0; z <= 100.0; z *= 1.25) {
    x.push_back(z);
    y.push_back(std::abs(symbol_split(nu1, z).b_plus));
  }
  CHECK(fit_power_law(x, y).exponent == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("Bessel zeros") {
  CHECK(bessel_J_zero(nu1, 1) == doctest::Approx(3.8317059702075123).epsilon(1e-13));
  for (int k = 1; k <= 10; ++k) CHECK(std::abs(bessel_J(nu1, bessel_J_zero(nu1, k))) < 1e-13);
}

TEST_CASE("orders and signs") {
  CHECK(BesselOrder::from_dimension(4).nu == 1.0);
  CHECK(BesselOrder::from_dimension(3).nu == 0.5);
  CHECK(opposite(Sign::plus) == Sign::minus);
  CHECK(sgn(Sign::minus) == -1.0);
  CHECK_THROWS(BesselOrder(-0.5));
}

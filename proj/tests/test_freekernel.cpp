#include "wavelab/freekernel.hpp"
#include "wavelab/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

using namespace wavelab;

namespace {

const BumpProfile phi = BumpProfile::bump(1.0, 2.0);

// Brute-force oracle: composite Gauss at 16x the library's default panel density.
cplx brute_Kh(double h, double sigma, double t) {
  QuadRule q = composite_gauss(64 * 16, 20, 1.0 / h, 2.0 / h);
  cplx sum = 0.0;
  for (size_t i = 0; i < q.x.size(); ++i) {
    double l = q.x[i];
    double z = sigma * l;
    sum += q.w[i] * std::exp(cplx(0.0, t * l)) * phi(h * l) * z * std::cyl_bessel_j(1.0, z) * l;
  }
  return sum / (4.0 * M_PI * M_PI * sigma * sigma);
}

}  // namespace

TEST_CASE("t = 0 is the radial Fourier transform") {
  // mpmath quad of (2 pi)^{-2} int phi(l) J1(l) l^2 dl
  cplx k = eval_Kh(4, phi, 1.0, 1.0, 0.0);
  CHECK(k.real() == doctest::Approx(2.2529072261770244e-4).epsilon(1e-8));
  CHECK(std::abs(k.imag()) < 1e-18);
}

TEST_CASE("frozen value at sigma = 2, t = 10") {
  // mpmath quad, 30 digits
  cplx k = eval_Kh(4, phi, 1.0, 2.0, 10.0);
  CHECK(k.real() == doctest::Approx(-1.5550240721681071e-5).epsilon(1e-7));
  CHECK(k.imag() == doctest::Approx(2.0017165848067384e-5).epsilon(1e-7));
  CHECK(std::abs(k - brute_Kh(1.0, 2.0, 10.0)) < 1e-12);
}

TEST_CASE("time reversal conjugates") {
  for (double t : {3.0, 17.0}) {
    cplx a = eval_Kh(4, phi, 1.0, 1.0, t), b = eval_Kh(4, phi, 1.0, 1.0, -t);
    CHECK(std::abs(a - std::conj(b)) < 1e-14);
  }
}

TEST_CASE("h scaling matches the brute-force oracle") {
  for (double h : {0.5, 0.25}) {
    cplx k = eval_Kh(4, phi, h, 1.5, 6.0);
    CHECK(std::abs(k - brute_Kh(h, 1.5, 6.0)) <= 1e-8 * std::abs(k) + 1e-14);
  }
}

TEST_CASE("outgoing and incoming pieces add up") {
  for (double sigma : {1.0, 5.0, 12.0}) {
    cplx full = eval_Kh(4, phi, 1.0, sigma, 5.0);
    cplx split = eval_Kh_pm(4, phi, 1.0, sigma, 5.0, Sign::plus) + eval_Kh_pm(4, phi, 1.0, sigma, 5.0, Sign::minus);
    CHECK(std::abs(full - split) <= 1e-8 * std::abs(full) + 1e-13);
  }
}

TEST_CASE("superpolynomial decay inside the light cone") {
  // sigma = t/4: local log-log slopes steepen with t
  std::vector<double> k;
  for (double t : {16.0, 32.0, 64.0, 128.0}) k.push_back(std::abs(eval_Kh(4, phi, 1.0, t / 4, t)));
  std::vector<double> slope;
  for (int i = 0; i < 3; ++i) slope.push_back(std::log2(k[i + 1] / k[i]));
  CHECK(slope[1] < slope[0]);
  CHECK(slope[2] < slope[1]);
  CHECK(slope[2] < -8.0);
}

TEST_CASE("free resolvent kernel") {
  // mpmath (i/4)(2/(3 pi)) H1(3)
  cplx g = free_resolvent_kernel(4, 2.0, Sign::plus, 1.5);
  CHECK(g.real() == doctest::Approx(-0.017224513200377593).epsilon(1e-12));
  CHECK(g.imag() == doctest::Approx(0.017987636416330906).epsilon(1e-12));
  CHECK(std::abs(free_resolvent_kernel(4, 2.0, Sign::minus, 1.5) - std::conj(g)) < 1e-15);
}

TEST_CASE("Plancherel identity") {
  for (double sigma : {1.0, 4.0}) {
    PlancherelResult p = plancherel_check(4, phi, 1.0, sigma, 0);
    CHECK(p.rel_gap < 0.01);
  }
}

TEST_CASE("domain errors and helpers") {
  CHECK_THROWS_AS(eval_Kh(4, phi, 1.0, 0.0, 1.0), SigmaError);
  CHECK_THROWS_AS(eval_Kh(4, phi, 0.0, 1.0, 1.0), ScaleError);
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI));
  std::ostringstream os;
  write_kernel_csv(os, {{1.0, 2.0, 0.5, cplx(1.0, -1.0)}});
  CHECK(os.str().rfind("sigma,t,h,re,im", 0) == 0);
}

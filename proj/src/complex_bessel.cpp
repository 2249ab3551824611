#include "complex_bessel.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace wavelab::detail {

namespace {

const cplx I(0.0, 1.0);

cplx series_J(double nu, cplx z) {
  cplx q = -0.25 * z * z;
  cplx term = std::pow(0.5 * z, nu) / boost::math::tgamma(nu + 1.0);
  cplx sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && k > 5) break;
  }
  return sum;
}

// Integer-order Y_n by the ascending series.
cplx series_Y_int(int n, cplx z) {
  cplx half = 0.5 * z;
  cplx q = 0.25 * z * z;
  cplx s1 = 0.0;
  for (int k = 0; k < n; ++k)
    s1 += boost::math::factorial<double>(n - k - 1) / boost::math::factorial<double>(k) * std::pow(q, k);
  s1 *= -std::pow(half, -n) / M_PI;
  cplx s2 = (2.0 / M_PI) * std::log(half) * series_J(n, z);
  cplx s3 = 0.0;
  cplx term = 1.0 / boost::math::factorial<double>(n);
  for (int k = 0; k < 400; ++k) {
    if (k > 0) term *= -q / (static_cast<double>(k) * (n + k));
    cplx add = (boost::math::digamma(k + 1.0) + boost::math::digamma(n + k + 1.0)) * term;
    s3 += add;
    if (k > 5 && std::abs(add) < 1e-18 * std::abs(s3)) break;
  }
  s3 *= -std::pow(half, n) / M_PI;
  return s1 + s2 + s3;
}

cplx asymptotic_H(double nu, cplx z, double sign) {
  double mu = 4.0 * nu * nu;
  cplx sum = 1.0, term = 1.0;
  double last = 1e300;
  for (int k = 1; k < 60; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0) * (sign * I) / z;
    double a = std::abs(term);
    if (a > last) break;
    sum += term;
    last = a;
    if (a < 1e-17) break;
  }
  return std::sqrt(2.0 / (M_PI * z)) * std::exp(sign * I * (z - 0.5 * nu * M_PI - 0.25 * M_PI)) * sum;
}

bool is_integer(double nu) { return std::floor(nu) == nu; }

}  // namespace

BesselPair complex_bessel(double nu, cplx z) {
  if (nu < 0.0 || nu > 4.0 || (!is_integer(nu) && !is_integer(nu - 0.5)))
    throw DomainError("complex_bessel: order must be an integer or half-integer in [0, 4]");
  if (std::abs(z) == 0.0) throw DomainError("complex_bessel: z must be nonzero");
  BesselPair out;
  if (std::abs(z) >= 17.0) {
    cplx hp = asymptotic_H(nu, z, 1.0);
    cplx hm = asymptotic_H(nu, z, -1.0);
    out.j = 0.5 * (hp + hm);
    out.h_plus = hp;
    return out;
  }
  if (is_integer(nu)) {
    int n = static_cast<int>(nu);
    out.j = series_J(nu, z);
    out.h_plus = out.j + I * series_Y_int(n, z);
    return out;
  }
  // half-integer: closed forms at +-1/2 and upward recurrence
  cplx pre = std::sqrt(2.0 / (M_PI * z));
  cplx h_prev = pre * std::exp(I * z);      // H^+_{-1/2}
  cplx h_cur = -I * pre * std::exp(I * z);  // H^+_{1/2}
  double v = 0.5;
  while (v < nu) {
    cplx next = (2.0 * v / z) * h_cur - h_prev;
    h_prev = h_cur;
    h_cur = next;
    v += 1.0;
  }
  out.h_plus = h_cur;
  out.j = series_J(nu, z);
  return out;
}

}  // namespace wavelab::detail

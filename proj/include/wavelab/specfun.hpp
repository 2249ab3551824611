#pragma once

#include <complex>
#include <stdexcept>

namespace wavelab {

using cplx = std::complex<double>;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Outgoing (+) / incoming (-).
enum class Sign { plus = 1, minus = -1 };

inline double sgn(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

struct BesselOrder {
  double nu = 0.0;

  BesselOrder() = default;
  explicit BesselOrder(double v);
  // nu = (n - 2) / 2
  static BesselOrder from_dimension(int n);
};

double bessel_J(BesselOrder order, double z);
double bessel_Y(BesselOrder order, double z);
cplx hankel_H(BesselOrder order, Sign sign, double z);

// z^nu J_nu(z)
double caljnu(BesselOrder order, double z);

// d^k/dz^k of z^nu J_nu(z), by the recurrence
// d/dz (z^p J_q) = z^p J_{q-1} + (p - q) z^{p-1} J_q.
double caljnu_deriv(BesselOrder order, int k, double z);

// z^nu J_nu(z) = e^{iz} b_plus + e^{-iz} b_minus,  b_pm = z^nu H^pm_nu(z) e^{-+iz} / 2.
struct SymbolPair {
  cplx b_plus;
  cplx b_minus;
  double z = 0.0;

  cplx recombine() const;
};

SymbolPair symbol_split(BesselOrder order, double z);

// Derivative of the Hankel function, from H'_nu = H_{nu-1} - (nu/z) H_nu.
cplx hankel_H_deriv(BesselOrder order, Sign sign, double z);
double bessel_J_deriv(BesselOrder order, double z);

// k-th positive zero of J_nu.
double bessel_J_zero(BesselOrder order, int k);

}  // namespace wavelab

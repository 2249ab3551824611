#pragma once

#include "wavelab/profile.hpp"
#include "wavelab/quadrature.hpp"
#include "wavelab/specfun.hpp"

#include <ostream>
#include <vector>

namespace wavelab {

struct SigmaError : DomainError {
  using DomainError::DomainError;
};
struct ScaleError : DomainError {
  using DomainError::DomainError;
};

struct KernelSample {
  double sigma = 0.0;
  double t = 0.0;
  double h = 1.0;
  cplx value;
};

struct KernelQuadOptions {
  double rel_tol = 1e-8;
  // absolute floor relative to the integral of |integrand| (roundoff level)
  double abs_floor = 1e-14;
  int points = 10;
  double panels_per_period = 8.0;
  int min_panels = 4;
  int max_doublings = 8;
};

struct KernelEval {
  cplx value;
  double error = 0.0;  // |I_2P - I_P|
  double scale = 0.0;  // integral of |integrand| times the prefactor
  int panels = 0;
};

// K_h(sigma, t) = (2 pi)^{-(nu+1)} sigma^{-2 nu} int e^{i t l} phi(h l) J_nu(sigma l) l dl,
// with J_nu(z) = z^nu J_nu(z).
KernelEval eval_Kh_detailed(int n, const BumpProfile& phi, double h, double sigma, double t,
                            const KernelQuadOptions& opt = {});
cplx eval_Kh(int n, const BumpProfile& phi, double h, double sigma, double t, const KernelQuadOptions& opt = {});

// K_h^pm: the e^{i(t pm sigma) l} b^pm(sigma l) pieces; K^+ + K^- = K_h.
KernelEval eval_Kh_pm_detailed(int n, const BumpProfile& phi, double h, double sigma, double t, Sign sign,
                               const KernelQuadOptions& opt = {});
cplx eval_Kh_pm(int n, const BumpProfile& phi, double h, double sigma, double t, Sign sign,
                const KernelQuadOptions& opt = {});

// pm (i/4) (lambda / (2 pi d))^nu H^pm_nu(lambda d)
cplx free_resolvent_kernel(int n, double lambda, Sign sign, double d);

// Plancherel check of int |t|^{2m} |K_h(sigma,t)|^2 dt.
struct PlancherelResult {
  double time_side = 0.0;    // truncated to |t| <= t_max
  double lambda_side = 0.0;  // exact frequency-side value
  double tail_estimate = 0.0;
  double rel_gap = 0.0;
};
PlancherelResult plancherel_check(int n, const BumpProfile& phi, double h, double sigma, int m, double t_max = 200.0);

// int_{S^{n-1}} K_h(|r e_1 - rp w|, t) dw
cplx angular_average_Kh(int n, const BumpProfile& phi, double h, double t, double r, double rp, int theta_points = 64);

// Area of the unit sphere S^{d-1} in R^d.
double sphere_area(int d);

void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& rows);

}  // namespace wavelab

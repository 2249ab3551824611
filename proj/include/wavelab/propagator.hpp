#pragma once

#include "wavelab/profile.hpp"
#include "wavelab/radialop.hpp"
#include "wavelab/resolvent.hpp"

#include <Eigen/Dense>

#include <ostream>
#include <string>
#include <vector>

namespace wavelab {

enum class PropagatorMethod { eigen, resolvent_formula, time_domain };
std::string to_string(PropagatorMethod m);

struct PropagatorRecord {
  double t = 0.0;
  double h = 1.0;
  BumpProfile profile;
  bool squared = false;
  Eigen::MatrixXcd matrix;
  PropagatorMethod method = PropagatorMethod::eigen;
  int negative_eigenvalues = 0;  // of the operator; their modes are dropped
};

// Q diag(e^{i t w} phi(h w)) Q^T, w = sqrt(mu) over mu > 0 (phi^2 if squared).
PropagatorRecord wave_multiplier(const Eigenpairs& eig, const BumpProfile& phi, double h, double t,
                                 bool squared = false);
// Same with an extra scalar factor g(w) on the diagonal.
Eigen::MatrixXcd wave_multiplier_weighted(const Eigenpairs& eig, const std::function<cplx(double)>& g);

struct ResolventFormulaOptions {
  int panels = 4;
  int points = 10;
  double window = 24.0;  // only columns with r' <= window are solved for
};

// e^{it sqrt G} phi^2(h sqrt G) = (pi i)^{-1} int e^{it l} phi^2(h l) (R^+ - R^-) l dl, restricted
// to the block r, r' <= window. R^- = conj(R^+), so R^+ - R^- = 2i Im R^+.
PropagatorRecord wave_via_resolvent(const RadialGrid& grid, int n, const PotentialSpec& pot, const BumpProfile& phi,
                                    double h, double t, const ResolventFormulaOptions& opt = {});
// Leading block of a matrix (rows and columns with r <= window).
Eigen::MatrixXcd window_block(const Eigen::MatrixXcd& a, const RadialGrid& grid, double window);

// Phi(t;h) = e^{it sqrt G} phi(h sqrt G) - e^{it sqrt G0} phi(h sqrt G0)
Eigen::MatrixXcd phi_difference(const Eigenpairs& free_eig, const Eigenpairs& eig, const BumpProfile& phi, double h,
                                double t);

struct DuhamelSplit {
  Eigen::MatrixXcd phi1_part;
  Eigen::MatrixXcd phi2_part;
  BumpProfile phi1;       // plateau with phi1 phi = phi
  int intervals = 0;      // Simpson intervals on [0, t]
  double quad_error = 0;  // max deviation of the tau integrals from the closed form, relative
};

DuhamelSplit duhamel_split(const Eigenpairs& free_eig, const Eigenpairs& eig, const RadialGrid& grid,
                           const PotentialSpec& pot, const BumpProfile& phi, double h, double t,
                           double nodes_per_unit = 0.0);

// int_0^t sin(a (t - tau)) e^{i b tau} d tau
cplx sin_exp_integral(double a, double b, double t);

struct TimeDomainResult {
  Eigen::VectorXcd u;         // Richardson combination (4 u_{dt/2} - u_dt)/3 at t_end
  Eigen::VectorXcd u_coarse;  // leapfrog at dt
  Eigen::VectorXcd u_fine;    // leapfrog at dt/2
  double observed_order = 0.0;
  double energy_drift = 0.0;  // max relative drift over the runs
  int steps = 0;              // of the coarse run
};

// u'' = -G u, u(0) = phi(h sqrt G) f, u'(0) = i sqrt G phi(h sqrt G) f.
TimeDomainResult time_domain_evolve(const DiscreteOperator& op, const Eigenpairs& eig, const BumpProfile& phi,
                                    double h, const Eigen::VectorXcd& f, double t_end, double dt);

// Sector matrix of the full-space free kernel: dr r_i^{(n-1)/2} r_j^{(n-1)/2} int_{S^{n-1}} K_h dw,
// for column j.
Eigen::VectorXcd sector_kernel_column(const RadialGrid& grid, int n, const BumpProfile& phi, double h, double t,
                                      int col, int theta_points = 64);

struct PropagatorNormRow {
  double t, h;
  std::string norm_kind;
  double value;
  std::string method;
};
void write_propagator_csv(std::ostream& os, const std::vector<PropagatorNormRow>& rows);

}  // namespace wavelab

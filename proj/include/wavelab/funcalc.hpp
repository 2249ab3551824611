#pragma once

#include "wavelab/fit.hpp"
#include "wavelab/profile.hpp"
#include "wavelab/radialop.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace wavelab {

constexpr int kMaxDerivativeOrder = 10;

// psi(mu) = phi(sqrt(mu)) and its almost analytic extension
//   psi~(x + iy) = chi(y) sum_{k<=N} psi^(k)(x) (iy)^k / k!
// with chi = 1 on |y| <= 1/2 and 0 for |y| >= 1.
struct AlmostAnalytic {
  BumpProfile phi;
  int N = 8;

  double mu_lo() const { return phi.a_lo * phi.a_lo; }
  double mu_hi() const { return phi.a_hi * phi.a_hi; }
  double psi(double mu) const;
  Jet psi_jet(double mu, int order) const;
  cplx value(cplx z) const;
  cplx dbar(cplx z) const;
};

AlmostAnalytic almost_analytic(const BumpProfile& phi, int N);

struct HSMesh {
  double y_min = 1.0 / 32;   // layers below are dropped; their size is in tail_estimate
  int y_points = 8;          // Gauss points per dyadic layer
  int x_points = 10;         // Gauss points per x panel
  double panel_ratio = 1.0;  // x panel width = panel_ratio * (layer floor)
  double max_panel = 0.05;
  int top_panels = 4;        // sub-layers of [1/2, 1] where chi' lives
};

struct HSResult {
  Eigen::MatrixXd matrix;
  long nodes = 0;
  double tail_estimate = 0.0;
  bool fast_path = true;
};

// psi(h^2 G) by the Helffer-Sjostrand integral over a graded complex mesh,
// resolvents of the tridiagonal h^2 G by direct recurrence solves.
HSResult hs_multiplier(const DiscreteOperator& op, const BumpProfile& phi, double h, int N, const HSMesh& mesh = {});

// (s A - z)^{-1} for the tridiagonal operator A, by pivots.
Eigen::MatrixXcd tridiagonal_inverse(const DiscreteOperator& op, double scale, cplx z);

// Q f(L) Q^T; eigenvalues with f = 0 are skipped.
Eigen::MatrixXd spectral_multiplier(const Eigenpairs& eig, const std::function<double(double)>& f);
Eigen::MatrixXcd spectral_multiplier_complex(const Eigenpairs& eig, const std::function<cplx(double)>& f);
// phi(h sqrt(mu)) for mu > 0, 0 otherwise.
Eigen::MatrixXd profile_multiplier(const Eigenpairs& eig, const BumpProfile& phi, double h);

struct Lemma23Report {
  std::vector<DecayFitReport> reports;
  std::vector<std::string> missing;  // entries not computable from the sector
  std::string caveat;
  bool all_pass() const;
};

// Estimates of the localized multiplier family on the radial sector;
// p in {1, 2, kPInf}.
Lemma23Report verify_lemma23(const Eigenpairs& free_eig, const Eigenpairs& eig, const RadialGrid& grid, int n,
                             const BumpProfile& phi, const std::vector<double>& h_set, double s,
                             const std::vector<int>& p_set);

}  // namespace wavelab

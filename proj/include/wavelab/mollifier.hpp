#pragma once

#include "wavelab/profile.hpp"
#include "wavelab/radialop.hpp"

#include <Eigen/Dense>

#include <vector>

namespace wavelab {

// m(u) = exp(-1/(1 - x^2)) / Z with x = (u - 5/12) / (1/12), supported in (1/3, 1/2), int m = 1.
// The integrals against m and its derivatives use panels x points Gauss nodes.
struct Mollifier {
  static constexpr double lo = 1.0 / 3.0;
  static constexpr double hi = 0.5;
  int panels = 32;
  int points = 24;

  Mollifier();
  Mollifier(int panels, int points);

  // k-th derivative, k in {0, 1, 2}, normalized.
  double derivative(double u, int k) const;
  double operator()(double u) const { return derivative(u, 0); }
  double normalization() const { return Z_; }
  const std::vector<double>& nodes() const { return u_; }
  const std::vector<double>& weights() const { return w_; }

 private:
  double Z_ = 1.0;
  std::vector<double> u_, w_;
};

// Barycentric interpolation weights at Chebyshev points of the second kind on [lo, hi].
struct ChebyshevGrid {
  double lo = 1.0, hi = 2.0;
  std::vector<double> x;

  ChebyshevGrid() = default;
  ChebyshevGrid(double lo, double hi, int count);
  int size() const { return static_cast<int>(x.size()); }
  // l_k(lambda) for all k; lambda must lie in [lo, hi].
  Eigen::VectorXd basis(double lambda) const;
  // d^j/dlambda^j of the basis by central differences with step dl and dl/2, combined.
  Eigen::VectorXd basis_derivative(double lambda, int j, double dl = 1e-3) const;
};

struct MollifierSampleOptions {
  double eps = 0.05;
  double window = 24.0;  // rows and columns with r <= window are kept
  int nodes = 64;
};

// T^+(lambda) = (pi i)^{-1} lambda <x>^{-1/2-s-eps} R^+(lambda) <x>^{-1/2-s-eps} on the window block,
// sampled on a Chebyshev grid; T = T^+ - T^- = 2 Re T^+.
class MollifiedMultiplier {
 public:
  MollifiedMultiplier(const RadialGrid& grid, int n, const PotentialSpec& pot, double s, double lambda_lo,
                      double lambda_hi, const MollifierSampleOptions& opt = {});

  double s() const { return s_; }
  int m() const;      // floor(s)
  double mu() const;  // s - floor(s)
  const ChebyshevGrid& chebyshev() const { return cheb_; }
  const Mollifier& mollifier() const { return moll_; }

  // The sample-space functional sum_k c_k T_k.
  Eigen::MatrixXcd combine(const Eigen::VectorXcd& c) const;
  Eigen::MatrixXcd combine(const Eigen::VectorXd& c) const;

  // Direct solve at one lambda (not interpolated), for checks.
  Eigen::MatrixXcd direct(double lambda) const;
  Eigen::MatrixXcd interpolated(double lambda) const;

  // Coefficients over the samples for d^j T^+ at lambda (finite differences) and
  // for d^j T_theta^+ at lambda (through the derivatives of m).
  Eigen::VectorXd derivative_coeffs(double lambda, int j) const;
  Eigen::VectorXd mollified_coeffs(double lambda, double theta, int j) const;
  // int e^{i t l} w(l) T_theta^+(l) dl with w the frequency profile; theta = 0 means T itself.
  Eigen::VectorXcd time_coeffs(const BumpProfile& phi, double t, double theta, int points = 96) const;

  // ||sum_k c_k T_k|| and ||sum_k c_k (T_k + conj T_k)|| (the latter is the T = T^+ - T^- version)
  double norm_plus(const Eigen::VectorXcd& c) const;
  double norm_full(const Eigen::VectorXcd& c) const;

 private:
  RadialGrid grid_;
  int n_;
  PotentialSpec pot_;
  double s_;
  MollifierSampleOptions opt_;
  ChebyshevGrid cheb_;
  Mollifier moll_;
  int rows_ = 0;
  std::vector<Eigen::MatrixXcd> samples_;
};

// Solve for the window block of R^+ at real lambda, R = (1 + R0 V)^{-1} R0.
Eigen::MatrixXcd resolvent_window(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, int rows);

}  // namespace wavelab

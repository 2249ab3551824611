#pragma once

#include "wavelab/radialop.hpp"
#include "wavelab/specfun.hpp"

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

namespace wavelab {

struct IllConditioned : std::runtime_error {
  double estimate;
  IllConditioned(const std::string& what, double est) : std::runtime_error(what), estimate(est) {}
};

enum class ResolventMethod { green_function, lippmann_schwinger, complex_shift };
std::string to_string(ResolventMethod m);

// Continuum free Green operator on the Liouville line, as the matrix acting on
// grid values (kernel times dr):  (i pi / 2) sqrt(r r') J_nu(lambda r<) H^pm_nu(lambda r>) dr
// for sign +, its complex conjugate for sign -.
Eigen::MatrixXcd free_green_matrix(const RadialGrid& grid, int n, double lambda, Sign sign);
// Outgoing kernel at complex k (Im k >= 0), i.e. (G0 - k^2)^{-1}.
Eigen::MatrixXcd free_green_matrix_complex(const RadialGrid& grid, int n, cplx k);

// Apply the discrete (-d^2/dr^2 + q - lambda^2) to column `col` of the Green matrix and return
// the largest off-node residual relative to the response at the node, over rows 2..M-1 with r >= r_min.
// The rows next to the origin carry the mismatch between r^{(n-1)/2} J and the discrete regular solution.
double delta_residual(const RadialGrid& grid, int n, double lambda, Sign sign, int col, double r_min = 0.0);
// Wronskian of sqrt(r) J and sqrt(r) H^+ at r, times pi/(2i); equals 1.
cplx normalized_wronskian(int n, double lambda, double r);

struct LSOptions {
  bool diagnostics = true;
  double max_inverse_norm = 1e6;
};

struct ResolventRecord {
  double lambda = 0.0;
  Sign sign = Sign::plus;
  double s = 0.55;   // right weight exponent used for K
  double s1 = 2.5;   // left weight exponent used for K
  double eta = 0.0;  // imaginary shift of lambda^2 (0 on the real axis)
  ResolventMethod method = ResolventMethod::lippmann_schwinger;
  Eigen::MatrixXcd matrix;  // unweighted R acting on grid values
  double K_norm = std::numeric_limits<double>::quiet_NaN();
  double inverse_norm = std::numeric_limits<double>::quiet_NaN();  // ||(1+K)^{-1}||
  double rcond = std::numeric_limits<double>::quiet_NaN();
  double identity_residual = std::numeric_limits<double>::quiet_NaN();
};

// K = <x>^{s1} V R0 <x>^{-s}
struct LSSystem {
  Eigen::MatrixXcd K;
  double K_norm = 0.0;
  double inverse_norm = 0.0;
};
LSSystem build_ls_system(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, Sign sign,
                         double s, double s1);

// R = (1 + R0 V)^{-1} R0 at real lambda.
ResolventRecord ls_solve(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, Sign sign,
                         double s, double s1, const LSOptions& opt = {});
// Same at z = lambda^2 + i eta with the continuum kernel at complex k = sqrt(z).
ResolventRecord ls_solve_shifted(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda,
                                 double eta, const LSOptions& opt = {});
// Direct dense (G - z)^{-1}, z = lambda^2 + i eta.
ResolventRecord complex_shift_resolvent(const DiscreteOperator& op, double lambda, double eta);

// <x>^{-a} A <x>^{-b}
Eigen::MatrixXcd weighted(const Eigen::MatrixXcd& a, const RadialGrid& grid, double left, double right);
// lambda <x>^{-1/2-s-eps} R <x>^{-1/2-s-eps}
Eigen::MatrixXcd calR(const ResolventRecord& rec, const RadialGrid& grid, double s, double eps);

struct LAPoint {
  double lambda = 0.0;
  Sign sign = Sign::plus;
  double norm = 0.0;  // ||<x>^{-1/2-eps} R <x>^{-1/2-eps}||
  double cond = 0.0;  // ||(1+K)^{-1}|| (1 for the free case)
  double K_norm = 0.0;
  std::string method;
  bool ok = true;
  std::string error;
};

struct LAScan {
  std::vector<LAPoint> points;
  double slope = 0.0;      // of log norm vs log lambda
  double sup_lambda_norm = 0.0;
  double ratio = 0.0;      // max/min of lambda * norm
  double lambda_K = 0.0;   // smallest grid lambda from which ||K|| < 1/2
  double lambda_inv = 0.0; // smallest grid lambda from which ||(1+K)^{-1}|| <= 2
};

// free = true scans R0 only.
LAScan la_norm_scan(const RadialGrid& grid, int n, const PotentialSpec& pot, const std::vector<double>& lambdas,
                    Sign sign, double eps, bool free);

struct DerivativeResult {
  Eigen::MatrixXcd matrix;  // Richardson-combined d^j calR
  double norm = 0.0;
  double norm_coarse = 0.0;  // step dl
  double norm_fine = 0.0;    // step dl/2
  double consistency = 0.0;  // |fine - coarse| / fine for the norms
  bool below_noise = false;
};

// d^j/dlambda^j of calR_s^pm by central differences with step dl and dl/2.
DerivativeResult resolvent_derivative(const RadialGrid& grid, int n, const PotentialSpec& pot, int j, double lambda,
                                      Sign sign, double s, double eps, double dl = 1e-3, bool free = false);

struct HolderScan {
  std::vector<double> gaps;
  std::vector<double> differences;  // ||d^m calR(l+g) - d^m calR(l)||
  std::vector<double> quotients;    // differences / g^mu
  double slope = 0.0;               // of log difference vs log gap
  int m = 0;
  double mu = 0.0;
};
HolderScan holder_scan(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, Sign sign, double s,
                       double eps, const std::vector<double>& gaps, double dl = 1e-3, bool free = false);

void write_la_csv(std::ostream& os, const std::vector<LAPoint>& rows);

}  // namespace wavelab

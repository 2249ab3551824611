#pragma once

#include "wavelab/estimates.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace wavelab::detail {

std::string num(double x);
// The fit harness asks for a decade; dyadic h and lambda grids span a factor of 8.
double span_for(const std::vector<double>& x);
DecayFitReport fit(const std::string& id, const std::string& name, const std::string& var,
                   const std::vector<double>& x, const std::vector<double>& y, double target, double tol,
                   Bound bound = Bound::two_sided);

// Eigenvectors with mu > 0 and keep(sqrt mu), and their frequencies w = sqrt(mu).
struct Band {
  Eigen::MatrixXd q;
  Eigen::VectorXd w;
  int size() const { return static_cast<int>(w.size()); }
};
Band band(const Eigenpairs& e, const std::function<bool(double)>& keep);
Band band(const Eigenpairs& e, const BumpProfile& phi, double h);

// X = L diag(d) R^T with thin real factors.
class LowRank {
 public:
  LowRank(Eigen::MatrixXd left, Eigen::MatrixXd right);
  int rank() const { return static_cast<int>(l_.cols()); }
  double norm2(const Eigen::VectorXcd& d) const;
  double l2_to_linf(const Eigen::VectorXcd& d, const RadialGrid& grid, int n) const;
  double l1_to_linf(const Eigen::VectorXcd& d, const RadialGrid& grid, int n) const;
  Eigen::MatrixXcd dense(const Eigen::VectorXcd& d) const;

 private:
  Eigen::MatrixXd l_, r_, rl_, rr_;
};

// Phi(t;h) with left and right radial weights, as a LowRank over the two bands.
struct PhiFactor {
  Band b, b0;
  LowRank lr;
  PhiFactor(const LabContext& ctx, double h, const Eigen::VectorXd& left, const Eigen::VectorXd& right);
  Eigen::VectorXcd diag(const BumpProfile& phi, double h, double t) const;
};

// Integrals over [edges_k, edges_{k+1}] of |t|^{tpow} ||diag(left) Q diag(e^{itw}) c||^2 dt,
// the norm taken with `measure` per grid point.
std::vector<double> band_time_integrals(const Band& b, const Eigen::VectorXd& left, const Eigen::VectorXcd& c,
                                        double tpow, const std::vector<double>& edges, double h, double measure);

}  // namespace wavelab::detail

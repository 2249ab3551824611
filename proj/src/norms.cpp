#include "wavelab/norms.hpp"

#include "wavelab/freekernel.hpp"

#include <cmath>

namespace wavelab {

namespace {

Eigen::VectorXcd start_vector(int m) {
  Eigen::VectorXcd v(m);
  for (int i = 0; i < m; ++i) v(i) = cplx(1.0 + 0.5 * std::sin(1.3 * i + 0.2), 0.3 * std::cos(0.7 * i));
  return v / v.norm();
}

}  // namespace

double op_norm2(int cols, const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adj,
                const PowerOptions& opt) {
  Eigen::VectorXcd v = start_vector(cols);
  double sigma2 = 0.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    Eigen::VectorXcd w = apply_adj(apply(v));
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (it > 3 && std::abs(nw - sigma2) <= opt.rel_tol * nw) {
      sigma2 = nw;
      break;
    }
    sigma2 = nw;
  }
  return std::sqrt(sigma2);
}

double op_norm2(const Eigen::MatrixXcd& a, const PowerOptions& opt) {
  if (a.size() == 0) return 0.0;
  return op_norm2(
      static_cast<int>(a.cols()), [&](const Eigen::VectorXcd& x) { return Eigen::VectorXcd(a * x); },
      [&](const Eigen::VectorXcd& y) { return Eigen::VectorXcd(a.adjoint() * y); }, opt);
}

double op_norm2(const Eigen::MatrixXd& a, const PowerOptions& opt) {
  if (a.size() == 0) return 0.0;
  Eigen::VectorXd v = start_vector(static_cast<int>(a.cols())).real();
  v /= v.norm();
  double sigma2 = 0.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    Eigen::VectorXd w = a.transpose() * (a * v);
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (it > 3 && std::abs(nw - sigma2) <= opt.rel_tol * nw) {
      sigma2 = nw;
      break;
    }
    sigma2 = nw;
  }
  return std::sqrt(sigma2);
}

double sector_l2_to_linf(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n) {
  double dr = grid.dr(), om = sphere_area(n), best = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double ri = grid.node(i);
    best = std::max(best, std::pow(ri, -0.5 * (n - 1)) * a.row(i).norm());
  }
  return best / std::sqrt(om * dr);
}

double sector_l1_to_linf(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n) {
  double dr = grid.dr(), om = sphere_area(n), best = 0.0;
  Eigen::VectorXd w(grid.M);
  for (int i = 0; i < grid.M; ++i) w(i) = std::pow(grid.node(i), -0.5 * (n - 1));
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) best = std::max(best, w(i) * std::abs(a(i, j)) * w(j));
  return best / (om * dr);
}

double sector_l1_to_l1(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::abs(a(i, j)) * std::pow(grid.node(i), 0.5 * (n - 1));
    best = std::max(best, s * std::pow(grid.node(j), -0.5 * (n - 1)));
  }
  return best;
}

double sector_linf_to_linf(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n) {
  double best = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += std::abs(a(i, j)) * std::pow(grid.node(j), 0.5 * (n - 1));
    best = std::max(best, s * std::pow(grid.node(i), -0.5 * (n - 1)));
  }
  return best;
}

double sector_lp_to_lp(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n, int p) {
  if (p == 1) return sector_l1_to_l1(a, grid, n);
  if (p == 2) return op_norm2(a);
  if (p == kPInf) return sector_linf_to_linf(a, grid, n);
  throw DomainError("sector_lp_to_lp: p must be 1, 2 or inf");
}

}  // namespace wavelab

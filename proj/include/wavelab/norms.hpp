#pragma once

#include "wavelab/radialop.hpp"

#include <Eigen/Dense>

#include <functional>

namespace wavelab {

struct PowerOptions {
  int max_iter = 400;
  double rel_tol = 1e-11;
};

// Largest singular value by power iteration on A^H A (deterministic start).
double op_norm2(const Eigen::MatrixXcd& a, const PowerOptions& opt = {});
double op_norm2(const Eigen::MatrixXd& a, const PowerOptions& opt = {});
// Matrix-free version: apply(x) = A x, apply_adj(y) = A^H y.
double op_norm2(int cols, const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adj,
                const PowerOptions& opt = {});

// Norms of the radial-sector operator represented by A acting on u = r^{(n-1)/2} v
// with the discrete measure dr. The sphere area of S^{n-1} is included.
double sector_l2_to_linf(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n);
double sector_l1_to_linf(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n);
double sector_l1_to_l1(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n);
double sector_linf_to_linf(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n);
// p in {1, 2, inf}; p = 0 encodes infinity.
double sector_lp_to_lp(const Eigen::MatrixXcd& a, const RadialGrid& grid, int n, int p);

constexpr int kPInf = 0;

}  // namespace wavelab

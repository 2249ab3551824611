#pragma once

#include "wavelab/specfun.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>

namespace wavelab {

struct GridError : DomainError {
  using DomainError::DomainError;
};

// Interior nodes r_j = j dr, j = 1..M, dr = R/(M+1); Dirichlet at 0 and R.
struct RadialGrid {
  double R = 64.0;
  int M = 1280;

  RadialGrid() = default;
  RadialGrid(double R_, int M_);

  double dr() const { return R / (M + 1); }
  // 0-based index i -> r_{i+1}
  double node(int i) const { return (i + 1) * dr(); }
  Eigen::VectorXd nodes() const;
  // first 0-based index with r > r_max (M if none)
  int index_above(double r_max) const;

  void validate() const;
  // Shortest wavelength rule: dr * (a_hi / h_min) <= 1.
  bool resolves(double h_min, double a_hi) const;
  // Finite propagation: R >= t_max + data_radius.
  bool horizon_ok(double t_max, double data_radius) const;
};

struct PotentialSpec {
  double c = 2.0;
  double delta = 3.0;

  double operator()(double r) const { return c * std::pow(1.0 + r * r, -0.5 * delta); }
  // delta > (n+1)/2 and c >= 0
  void validate(int n) const;
};

struct SpectralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiscreteOperator {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd diag;  // tridiagonal form of `matrix`
  Eigen::VectorXd off;   // length M-1
  int n = 4;
  RadialGrid grid;
  std::optional<PotentialSpec> potential;

  int size() const { return grid.M; }
  // y = A x using the tridiagonal form
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

// -d^2/dr^2 + (n-1)(n-3)/(4 r^2), second-order differences.
DiscreteOperator build_G0(const RadialGrid& grid, int n);
DiscreteOperator build_G(const RadialGrid& grid, int n, const PotentialSpec& potential);

// diag(<r_j>^{-s})
Eigen::DiagonalMatrix<double, Eigen::Dynamic> weight_matrix(const RadialGrid& grid, double s);
Eigen::VectorXd weight_vector(const RadialGrid& grid, double s);
Eigen::VectorXd potential_vector(const RadialGrid& grid, const PotentialSpec& potential);

struct Eigenpairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
  double residual = 0.0;    // ||A - Q L Q^T|| / ||A|| (Frobenius)
};

Eigenpairs spectral_decompose(const DiscreteOperator& op);
Eigenpairs spectral_decompose(const Eigen::MatrixXd& symmetric);

}  // namespace wavelab

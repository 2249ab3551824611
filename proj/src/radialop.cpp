#include "wavelab/radialop.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace wavelab {

RadialGrid::RadialGrid(double R_, int M_) : R(R_), M(M_) { validate(); }

void RadialGrid::validate() const {
  if (!std::isfinite(R) || R <= 0.0) throw GridError("RadialGrid: R must be > 0");
  if (M < 4) throw GridError("RadialGrid: need at least 4 interior nodes");
}

Eigen::VectorXd RadialGrid::nodes() const {
  Eigen::VectorXd r(M);
  for (int i = 0; i < M; ++i) r(i) = node(i);
  return r;
}

int RadialGrid::index_above(double r_max) const {
  int i = 0;
  while (i < M && node(i) <= r_max) ++i;
  return i;
}

bool RadialGrid::resolves(double h_min, double a_hi) const { return dr() * a_hi / h_min <= 1.0; }

bool RadialGrid::horizon_ok(double t_max, double data_radius) const { return R >= t_max + data_radius; }

void PotentialSpec::validate(int n) const {
  if (!std::isfinite(c) || c < 0.0) throw DomainError("PotentialSpec: c must be >= 0");
  if (!std::isfinite(delta) || !(delta > 0.5 * (n + 1)))
    throw DomainError("PotentialSpec: delta must exceed (n+1)/2 = " + std::to_string(0.5 * (n + 1)));
}

Eigen::VectorXcd DiscreteOperator::apply(const Eigen::VectorXcd& x) const {
  const int m = size();
  Eigen::VectorXcd y(m);
  for (int i = 0; i < m; ++i) {
    cplx s = diag(i) * x(i);
    if (i > 0) s += off(i - 1) * x(i - 1);
    if (i + 1 < m) s += off(i) * x(i + 1);
    y(i) = s;
  }
  return y;
}

Eigen::VectorXd DiscreteOperator::apply(const Eigen::VectorXd& x) const {
  const int m = size();
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    double s = diag(i) * x(i);
    if (i > 0) s += off(i - 1) * x(i - 1);
    if (i + 1 < m) s += off(i) * x(i + 1);
    y(i) = s;
  }
  return y;
}

static void fill_dense(DiscreteOperator& op) {
  const int m = op.size();
  op.matrix = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    op.matrix(i, i) = op.diag(i);
    if (i + 1 < m) op.matrix(i, i + 1) = op.matrix(i + 1, i) = op.off(i);
  }
}

DiscreteOperator build_G0(const RadialGrid& grid, int n) {
  if (n < 2) throw DomainError("build_G0: n must be >= 2");
  grid.validate();
  DiscreteOperator op;
  op.n = n;
  op.grid = grid;
  const int m = grid.M;
  const double dr = grid.dr();
  const double cf = 0.25 * (n - 1) * (n - 3);
  op.diag.resize(m);
  op.off = Eigen::VectorXd::Constant(m - 1, -1.0 / (dr * dr));
  for (int i = 0; i < m; ++i) {
    double r = grid.node(i);
    op.diag(i) = 2.0 / (dr * dr) + cf / (r * r);
  }
  fill_dense(op);
  return op;
}

DiscreteOperator build_G(const RadialGrid& grid, int n, const PotentialSpec& potential) {
  potential.validate(n);
  DiscreteOperator op = build_G0(grid, n);
  if (potential.c != 0.0) {
    for (int i = 0; i < grid.M; ++i) {
      double v = potential(grid.node(i));
      op.diag(i) += v;
      op.matrix(i, i) += v;
    }
  }
  op.potential = potential;
  return op;
}

Eigen::VectorXd weight_vector(const RadialGrid& grid, double s) {
  if (!std::isfinite(s)) throw DomainError("weight: s must be finite");
  Eigen::VectorXd w(grid.M);
  for (int i = 0; i < grid.M; ++i) {
    double r = grid.node(i);
    w(i) = std::pow(1.0 + r * r, -0.5 * s);
  }
  return w;
}

Eigen::DiagonalMatrix<double, Eigen::Dynamic> weight_matrix(const RadialGrid& grid, double s) {
  return Eigen::DiagonalMatrix<double, Eigen::Dynamic>(weight_vector(grid, s));
}

Eigen::VectorXd potential_vector(const RadialGrid& grid, const PotentialSpec& potential) {
  Eigen::VectorXd v(grid.M);
  for (int i = 0; i < grid.M; ++i) v(i) = potential(grid.node(i));
  return v;
}

static Eigenpairs finish(const Eigen::MatrixXd& a, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es) {
  if (es.info() != Eigen::Success) throw SpectralError("spectral_decompose: eigensolver did not converge");
  Eigenpairs e;
  e.values = es.eigenvalues();
  e.vectors = es.eigenvectors();
  Eigen::MatrixXd rec = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
  double na = a.norm();
  e.residual = na > 0.0 ? (rec - a).norm() / na : (rec - a).norm();
  if (!(e.residual <= 1e-10)) throw SpectralError("spectral_decompose: reconstruction residual too large");
  return e;
}

Eigenpairs spectral_decompose(const DiscreteOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(op.diag, op.off, Eigen::ComputeEigenvectors);
  return finish(op.matrix, es);
}

Eigenpairs spectral_decompose(const Eigen::MatrixXd& symmetric) {
  if ((symmetric - symmetric.transpose()).norm() > 1e-12 * std::max(1.0, symmetric.norm()))
    throw SpectralError("spectral_decompose: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric);
  return finish(symmetric, es);
}

}  // namespace wavelab

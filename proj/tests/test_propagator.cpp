#include "wavelab/funcalc.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/propagator.hpp"
#include "wavelab/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace wavelab;

namespace {

const RadialGrid grid(32.0, 640);
const BumpProfile phi = BumpProfile::bump(1.0, 2.0);

struct Ops {
  DiscreteOperator op0, op;
  Eigenpairs e0, e;
  Ops() : op0(build_G0(grid, 4)), op(build_G(grid, 4, PotentialSpec{})) {
    e0 = spectral_decompose(op0);
    e = spectral_decompose(op);
  }
};

const Ops& ops() {
  static const Ops o;
  return o;
}

}  // namespace

TEST_CASE("t = 0 is the frequency multiplier") {
  PropagatorRecord p = wave_multiplier(ops().e, phi, 0.5, 0.0);
  CHECK((p.matrix.real() - profile_multiplier(ops().e, phi, 0.5)).norm() < 1e-13);
  CHECK(p.matrix.imag().norm() < 1e-13);
  CHECK(p.negative_eigenvalues == 0);
}

TEST_CASE("group law") {
  BumpProfile cover = plateau_cover(phi);
  Eigen::MatrixXcd a = wave_multiplier(ops().e, cover, 1.0, 3.0).matrix * wave_multiplier(ops().e, phi, 1.0, 5.0).matrix;
  Eigen::MatrixXcd b = wave_multiplier(ops().e, phi, 1.0, 8.0).matrix;
  CHECK((a - b).norm() < 1e-10);
}

TEST_CASE("difference of propagators") {
  Eigenpairs e_none = spectral_decompose(build_G(grid, 4, PotentialSpec{0.0, 3.0}));
  CHECK(phi_difference(ops().e0, e_none, phi, 0.5, 4.0).norm() == 0.0);
  Eigen::MatrixXcd d0 = phi_difference(ops().e0, ops().e, phi, 0.5, 0.0);
  Eigen::MatrixXd direct = profile_multiplier(ops().e, phi, 0.5) - profile_multiplier(ops().e0, phi, 0.5);
  CHECK((d0.real() - direct).norm() < 1e-12);
}

TEST_CASE("Duhamel reconstruction") {
  const double t = 4.0, h = 0.5;
  DuhamelSplit d = duhamel_split(ops().e0, ops().e, grid, PotentialSpec{}, phi, h, t);
  Eigen::MatrixXcd full = phi_difference(ops().e0, ops().e, phi, h, t);
  double rel = op_norm2(Eigen::MatrixXcd(d.phi1_part + h * d.phi2_part - full)) / op_norm2(full);
  CHECK(rel <= 0.01);
  CHECK(d.intervals % 2 == 0);
}

TEST_CASE("sin-exp integral closed form") {
  QuadRule q = composite_gauss(64, 20, 0.0, 3.0);
  cplx s = 0.0;
  for (size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * std::sin(1.7 * (3.0 - q.x[i])) * std::exp(cplx(0, 0.6 * q.x[i]));
  CHECK(std::abs(sin_exp_integral(1.7, 0.6, 3.0) - s) < 1e-12);
  // resonant case a = b
  s = 0.0;
  for (size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * std::sin(1.2 * (3.0 - q.x[i])) * std::exp(cplx(0, 1.2 * q.x[i]));
  CHECK(std::abs(sin_exp_integral(1.2, 1.2, 3.0) - s) < 1e-10);
}

TEST_CASE("leapfrog against the eigen route") {
  Eigen::VectorXcd f(grid.M);
  for (int i = 0; i < grid.M; ++i) {
    double r = grid.node(i);
    f(i) = std::exp(-(r - 10.0) * (r - 10.0));
  }
  const double h = 0.5;
  TimeDomainResult zero = time_domain_evolve(ops().op, ops().e, phi, h, f, 0.0, 0.5 * grid.dr());
  Eigen::VectorXcd u0 = wave_multiplier(ops().e, phi, h, 0.0).matrix * f;
  CHECK((zero.u - u0).norm() <= 1e-14 * u0.norm());

  TimeDomainResult td = time_domain_evolve(ops().op, ops().e, phi, h, f, 8.0, 0.5 * grid.dr());
  Eigen::VectorXcd ue = wave_multiplier(ops().e, phi, h, 8.0).matrix * f;
  CHECK((td.u - ue).norm() / ue.norm() <= 1e-4);
  CHECK(td.observed_order == doctest::Approx(2.0).epsilon(0.15));
  CHECK(td.energy_drift < 1e-3);
}

TEST_CASE("sector kernel column against the free eigen route") {
  const double t = 10.0;
  int col = grid.index_above(5.0) - 1;
  Eigen::VectorXcd k = sector_kernel_column(grid, 4, phi, 1.0, t, col);
  Eigen::VectorXcd e = wave_multiplier(ops().e0, phi, 1.0, t).matrix.col(col);
  // rows whose light cone stays inside the box
  int rows = grid.index_above(grid.R - t - 5.0);
  double rel = (k.head(rows) - e.head(rows)).norm() / e.head(rows).norm();
  CHECK(rel < 0.02);
}

TEST_CASE("norm table output") {
  std::ostringstream os;
  write_propagator_csv(os, {{1.0, 0.5, "L2", 0.25, "eigen"}});
  CHECK(os.str().rfind("t,h,norm_kind,value,method", 0) == 0);
  CHECK(to_string(PropagatorMethod::time_domain) == "time_domain");
}

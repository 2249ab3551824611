#include "wavelab/propagator.hpp"

#include "wavelab/freekernel.hpp"
#include "wavelab/funcalc.hpp"
#include "wavelab/quadrature.hpp"

#include <Eigen/LU>

#include <cmath>
#include <iomanip>

namespace wavelab {

namespace {

const cplx kI(0.0, 1.0);

double freq(double mu) { return mu > 0.0 ? std::sqrt(mu) : 0.0; }

std::vector<int> support_indices(const Eigenpairs& e, const BumpProfile& p, double h) {
  std::vector<int> idx;
  for (int k = 0; k < e.values.size(); ++k)
    if (e.values(k) > 0.0 && p(h * std::sqrt(e.values(k))) != 0.0) idx.push_back(k);
  return idx;
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& q, const std::vector<int>& idx) {
  Eigen::MatrixXd out(q.rows(), idx.size());
  for (size_t c = 0; c < idx.size(); ++c) out.col(c) = q.col(idx[c]);
  return out;
}

// leapfrog from u0, v0 with a fourth-order Taylor start
struct Leapfrog {
  Eigen::VectorXcd u;
  double drift = 0.0;
};

Leapfrog leapfrog(const DiscreteOperator& op, const Eigen::VectorXcd& u0, const Eigen::VectorXcd& v0, double dt,
                  int steps) {
  Eigen::VectorXcd gu = op.apply(u0), gv = op.apply(v0);
  Eigen::VectorXcd prev = u0;
  Eigen::VectorXcd cur = u0 + dt * v0 - (dt * dt / 2.0) * gu - (dt * dt * dt / 6.0) * gv +
                         (std::pow(dt, 4) / 24.0) * op.apply(gu);
  auto energy = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return ((b - a) / dt).squaredNorm() + a.dot(op.apply(b)).real();
  };
  Leapfrog out;
  const double e0 = energy(prev, cur);
  for (int k = 1; k < steps; ++k) {
    Eigen::VectorXcd next = 2.0 * cur - prev - (dt * dt) * op.apply(cur);
    prev = std::move(cur);
    cur = std::move(next);
    out.drift = std::max(out.drift, std::abs(energy(prev, cur) - e0) / std::abs(e0));
  }
  out.u = steps == 0 ? u0 : cur;
  return out;
}

}  // namespace

std::string to_string(PropagatorMethod m) {
  switch (m) {
    case PropagatorMethod::eigen:
      return "eigen";
    case PropagatorMethod::resolvent_formula:
      return "resolvent_formula";
    case PropagatorMethod::time_domain:
      return "time_domain";
  }
  return "?";
}

Eigen::MatrixXcd wave_multiplier_weighted(const Eigenpairs& eig, const std::function<cplx(double)>& g) {
  return spectral_multiplier_complex(eig, [&](double mu) { return mu > 0.0 ? g(std::sqrt(mu)) : cplx(0.0); });
}

PropagatorRecord wave_multiplier(const Eigenpairs& eig, const BumpProfile& phi, double h, double t, bool squared) {
  PropagatorRecord rec;
  rec.t = t;
  rec.h = h;
  rec.profile = phi;
  rec.squared = squared;
  rec.method = PropagatorMethod::eigen;
  for (int k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) <= 0.0) ++rec.negative_eigenvalues;
  rec.matrix = wave_multiplier_weighted(eig, [&](double w) {
    double a = phi(h * w);
    if (squared) a *= a;
    return a * std::exp(kI * (t * w));
  });
  return rec;
}

Eigen::MatrixXcd window_block(const Eigen::MatrixXcd& a, const RadialGrid& grid, double window) {
  int m = std::min<int>(grid.index_above(window), static_cast<int>(a.rows()));
  return a.topLeftCorner(m, m);
}

PropagatorRecord wave_via_resolvent(const RadialGrid& grid, int n, const PotentialSpec& pot, const BumpProfile& phi,
                                    double h, double t, const ResolventFormulaOptions& opt) {
  phi.validate();
  if (!phi.compact()) throw DomainError("wave_via_resolvent: profile must be compactly supported");
  const int mw = grid.index_above(opt.window);
  Eigen::VectorXd v = potential_vector(grid, pot);
  QuadRule q = composite_gauss(opt.panels, opt.points, phi.a_lo / h, phi.a_hi / h);
  Eigen::MatrixXcd accc = Eigen::MatrixXcd::Zero(mw, mw);
  for (size_t k = 0; k < q.x.size(); ++k) {
    double l = q.x[k];
    double a = phi(h * l);
    cplx wgt = q.w[k] * a * a * l * std::exp(kI * (t * l));
    if (wgt == 0.0) continue;
    Eigen::MatrixXcd r0 = free_green_matrix(grid, n, l, Sign::plus);
    Eigen::MatrixXcd block;
    if (pot.c == 0.0) {
      block = r0.topLeftCorner(mw, mw);
    } else {
      Eigen::MatrixXcd sys = r0 * v.asDiagonal();
      sys.diagonal().array() += 1.0;
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys);
      if (!(lu.rcond() > 1e-13)) throw IllConditioned("wave_via_resolvent: singular system", 1.0 / lu.rcond());
      Eigen::MatrixXcd cols = lu.solve(r0.leftCols(mw));
      block = cols.topRows(mw);
    }
    accc += wgt * block.imag().cast<cplx>();
  }
  PropagatorRecord rec;
  rec.t = t;
  rec.h = h;
  rec.profile = phi;
  rec.squared = true;
  rec.method = PropagatorMethod::resolvent_formula;
  rec.matrix = (2.0 / M_PI) * accc;
  return rec;
}

Eigen::MatrixXcd phi_difference(const Eigenpairs& free_eig, const Eigenpairs& eig, const BumpProfile& phi, double h,
                                double t) {
  if (free_eig.values.size() != eig.values.size()) throw GridError("phi_difference: grid mismatch");
  return wave_multiplier(eig, phi, h, t).matrix - wave_multiplier(free_eig, phi, h, t).matrix;
}

cplx sin_exp_integral(double a, double b, double t) {
  // split into exponentials; int_0^t e^{i c tau} = t e^{i c t/2} sinc(c t/2)
  auto ex = [&](double c) {
    double x = 0.5 * c * t;
    double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return t * std::exp(kI * x) * sinc;
  };
  return (std::exp(kI * (a * t)) * ex(b - a) - std::exp(-kI * (a * t)) * ex(b + a)) / (2.0 * kI);
}

DuhamelSplit duhamel_split(const Eigenpairs& free_eig, const Eigenpairs& eig, const RadialGrid& grid,
                           const PotentialSpec& pot, const BumpProfile& phi, double h, double t,
                           double nodes_per_unit) {
  DuhamelSplit out;
  const int m = grid.M;
  BumpProfile phi1 = plateau_cover(phi);
  BumpProfile tphi = phi.tilted(1.0);
  BumpProfile tphi1 = phi1.tilted(-1.0);
  out.phi1 = phi1;

  auto mult = [&](const Eigenpairs& e, const BumpProfile& p) {
    return profile_multiplier(e, p, h).cast<cplx>().eval();
  };
  Eigen::MatrixXcd p1g = mult(eig, phi1), p1g0 = mult(free_eig, phi1);
  Eigen::MatrixXcd dphi = mult(eig, phi) - mult(free_eig, phi);
  Eigen::MatrixXcd dtphi = mult(eig, tphi) - mult(free_eig, tphi);
  Eigen::MatrixXcd eg = wave_multiplier(eig, phi, h, t).matrix;
  Eigen::MatrixXcd e0 = wave_multiplier_weighted(free_eig, [&](double w) { return std::exp(kI * (t * w)); });
  Eigen::MatrixXcd s0 = wave_multiplier_weighted(free_eig, [&](double w) { return cplx(std::sin(t * w)); });
  Eigen::MatrixXcd t1s0 = wave_multiplier_weighted(free_eig, [&](double w) { return tphi1(h * w) * std::sin(t * w); });
  Eigen::MatrixXcd p1s0 = p1g0 * s0;
  out.phi1_part = (p1g - p1g0) * eg + (p1g0 * e0) * dphi - kI * (p1s0 * dphi) + kI * (t1s0 * dtphi);

  // Phi_2 in the mixed eigenbasis: -Q0 [a_i C_ij S_ij b_j] Q^T
  std::vector<int> I = support_indices(free_eig, tphi1, h);
  std::vector<int> J = support_indices(eig, phi, h);
  out.phi2_part = Eigen::MatrixXcd::Zero(m, m);
  if (t == 0.0 || I.empty() || J.empty() || pot.c == 0.0) return out;
  Eigen::MatrixXd q0 = columns(free_eig.vectors, I), q1 = columns(eig.vectors, J);
  Eigen::MatrixXd c = q0.transpose() * potential_vector(grid, pot).asDiagonal() * q1;
  Eigen::VectorXd om(I.size()), wj(J.size());
  for (size_t i = 0; i < I.size(); ++i) om(i) = freq(free_eig.values(I[i]));
  for (size_t j = 0; j < J.size(); ++j) wj(j) = freq(eig.values(J[j]));
  double top = std::max(om.maxCoeff(), wj.maxCoeff());
  double npu = nodes_per_unit > 0.0 ? nodes_per_unit : std::max(64.0, 16.0 * top);
  int iv = std::max(2, 2 * static_cast<int>(std::ceil(0.5 * npu * std::abs(t))));
  out.intervals = iv;
  QuadRule sr = simpson(iv, 0.0, t);
  const int K = static_cast<int>(sr.x.size());
  Eigen::MatrixXd a(I.size(), K);
  Eigen::MatrixXcd b(J.size(), K);
  for (int k = 0; k < K; ++k) {
    for (size_t i = 0; i < I.size(); ++i) a(i, k) = sr.w[k] * std::sin(om(i) * (t - sr.x[k]));
    for (size_t j = 0; j < J.size(); ++j) b(j, k) = std::exp(kI * (wj(j) * sr.x[k]));
  }
  Eigen::MatrixXcd s = a.cast<cplx>() * b.transpose();
  double worst = 0.0, scale = 0.0;
  for (size_t i = 0; i < I.size(); ++i)
    for (size_t j = 0; j < J.size(); ++j) {
      cplx ex = sin_exp_integral(om(i), wj(j), t);
      worst = std::max(worst, std::abs(ex - s(i, j)));
      scale = std::max(scale, std::abs(ex));
    }
  out.quad_error = worst / scale;
  Eigen::MatrixXcd mid(I.size(), J.size());
  for (size_t i = 0; i < I.size(); ++i)
    for (size_t j = 0; j < J.size(); ++j)
      mid(i, j) = tphi1(h * om(i)) * c(i, j) * s(i, j) * phi(h * wj(j));
  out.phi2_part = -(q0.cast<cplx>() * mid) * q1.transpose().cast<cplx>();
  return out;
}

TimeDomainResult time_domain_evolve(const DiscreteOperator& op, const Eigenpairs& eig, const BumpProfile& phi,
                                    double h, const Eigen::VectorXcd& f, double t_end, double dt) {
  if (!(dt > 0.0) || dt > 0.5 * op.grid.dr() * (1.0 + 1e-12))
    throw DomainError("time_domain_evolve: CFL needs 0 < dt <= dr/2");
  if (t_end < 0.0) throw DomainError("time_domain_evolve: t_end must be >= 0");
  TimeDomainResult out;
  Eigen::MatrixXcd p = profile_multiplier(eig, phi, h).cast<cplx>();
  Eigen::MatrixXcd sp = wave_multiplier_weighted(eig, [&](double w) { return cplx(0.0, w * phi(h * w)); });
  Eigen::VectorXcd u0 = p * f, v0 = sp * f;
  int steps = static_cast<int>(std::ceil(t_end / dt - 1e-9));
  if (steps == 0) {
    out.u = out.u_coarse = out.u_fine = u0;
    return out;
  }
  double d = t_end / steps;
  out.steps = steps;
  Leapfrog c = leapfrog(op, u0, v0, d, steps);
  Leapfrog fn = leapfrog(op, u0, v0, 0.5 * d, 2 * steps);
  Leapfrog ff = leapfrog(op, u0, v0, 0.25 * d, 4 * steps);
  out.u_coarse = c.u;
  out.u_fine = fn.u;
  out.u = (4.0 * fn.u - c.u) / 3.0;
  out.observed_order = std::log2((c.u - fn.u).norm() / (fn.u - ff.u).norm());
  out.energy_drift = std::max({c.drift, fn.drift, ff.drift});
  return out;
}

Eigen::VectorXcd sector_kernel_column(const RadialGrid& grid, int n, const BumpProfile& phi, double h, double t,
                                      int col, int theta_points) {
  const int m = grid.M;
  Eigen::VectorXcd out(m);
  double rj = grid.node(col);
  double e = 0.5 * (n - 1);
  for (int i = 0; i < m; ++i) {
    double ri = grid.node(i);
    out(i) = grid.dr() * std::pow(ri * rj, e) * angular_average_Kh(n, phi, h, t, ri, rj, theta_points);
  }
  return out;
}

void write_propagator_csv(std::ostream& os, const std::vector<PropagatorNormRow>& rows) {
  os << "t,h,norm_kind,value,method\n" << std::setprecision(17);
  for (const PropagatorNormRow& r : rows)
    os << r.t << ',' << r.h << ',' << r.norm_kind << ',' << r.value << ',' << r.method << '\n';
}

}  // namespace wavelab

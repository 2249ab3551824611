#include "wavelab/mollifier.hpp"

#include "wavelab/norms.hpp"
#include "wavelab/quadrature.hpp"
#include "wavelab/resolvent.hpp"

#include <cmath>

namespace wavelab {

namespace {

double raw_bump(double u, int k) {
  const double a = Mollifier::lo, b = Mollifier::hi;
  if (u <= a || u >= b) return 0.0;
  const double r2 = 0.25 * (b - a) * (b - a);
  double g = (u - a) * (b - u) / r2;
  double gp = (a + b - 2.0 * u) / r2;
  double gpp = -2.0 / r2;
  double m = std::exp(-1.0 / g);
  if (k == 0) return m;
  if (k == 1) return m * gp / (g * g);
  // (e^{-1/g})'' = e^{-1/g} (g'^2 + g'' g^2 - 2 g g'^2) / g^4
  double g2 = g * g;
  return m * (gp * gp + gpp * g2 - 2.0 * g * gp * gp) / (g2 * g2);
}

}  // namespace

Mollifier::Mollifier() : Mollifier(32, 24) {}

Mollifier::Mollifier(int panels_, int points_) : panels(panels_), points(points_) {
  QuadRule q = composite_gauss(panels, points, lo, hi);
  u_ = q.x;
  w_ = q.w;
  double z = 0.0;
  for (size_t i = 0; i < u_.size(); ++i) z += w_[i] * raw_bump(u_[i], 0);
  Z_ = z;
}

double Mollifier::derivative(double u, int k) const {
  if (k < 0 || k > 2) throw DomainError("Mollifier: derivative order must be 0, 1 or 2");
  return raw_bump(u, k) / Z_;
}

ChebyshevGrid::ChebyshevGrid(double lo_, double hi_, int count) : lo(lo_), hi(hi_) {
  if (!(hi > lo) || count < 2) throw DomainError("ChebyshevGrid: need lo < hi and at least 2 points");
  x.resize(count);
  for (int k = 0; k < count; ++k)
    x[k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(M_PI * k / (count - 1));
}

Eigen::VectorXd ChebyshevGrid::basis(double lambda) const {
  const int N = size();
  if (lambda < lo - 1e-12 || lambda > hi + 1e-12)
    throw DomainError("ChebyshevGrid: lambda outside the sampled interval");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd bw(N);
  for (int k = 0; k < N; ++k) {
    double w = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0 || k == N - 1) w *= 0.5;
    bw(k) = w;
    if (lambda == x[k]) {
      out(k) = 1.0;
      return out;
    }
  }
  double den = 0.0;
  for (int k = 0; k < N; ++k) {
    out(k) = bw(k) / (lambda - x[k]);
    den += out(k);
  }
  return out / den;
}

Eigen::VectorXd ChebyshevGrid::basis_derivative(double lambda, int j, double dl) const {
  auto diff = [&](double d) -> Eigen::VectorXd {
    if (j == 0) return basis(lambda);
    if (j == 1) return (basis(lambda + d) - basis(lambda - d)) / (2.0 * d);
    if (j == 2) return (basis(lambda + d) - 2.0 * basis(lambda) + basis(lambda - d)) / (d * d);
    throw DomainError("ChebyshevGrid: derivative order must be 0, 1 or 2");
  };
  if (j == 0) return basis(lambda);
  Eigen::VectorXd coarse = diff(dl), fine = diff(0.5 * dl);
  return fine + (fine - coarse) / 3.0;
}

Eigen::MatrixXcd resolvent_window(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, int rows) {
  Eigen::MatrixXcd r0 = free_green_matrix(grid, n, lambda, Sign::plus);
  if (pot.c == 0.0) return r0.topLeftCorner(rows, rows);
  Eigen::VectorXd v = potential_vector(grid, pot);
  Eigen::MatrixXcd a = r0 * v.asDiagonal();
  a.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (!(lu.rcond() > 1e-13)) throw IllConditioned("resolvent_window: 1 + R0 V is numerically singular", 1.0 / lu.rcond());
  Eigen::MatrixXcd sol = lu.solve(r0.leftCols(rows));
  return sol.topRows(rows);
}

MollifiedMultiplier::MollifiedMultiplier(const RadialGrid& grid, int n, const PotentialSpec& pot, double s,
                                         double lambda_lo, double lambda_hi, const MollifierSampleOptions& opt)
    : grid_(grid), n_(n), pot_(pot), s_(s), opt_(opt), cheb_(lambda_lo, lambda_hi, opt.nodes) {
  if (s < 0.0 || s > 0.5 * (n - 1)) throw DomainError("MollifiedMultiplier: s must lie in [0, (n-1)/2]");
  if (!(lambda_lo > 0.0)) throw DomainError("MollifiedMultiplier: lambda grid must be positive");
  pot.validate(n);
  rows_ = std::max(1, grid.index_above(opt.window));
  samples_.reserve(cheb_.size());
  for (double l : cheb_.x) samples_.push_back(direct(l));
}

int MollifiedMultiplier::m() const { return static_cast<int>(std::floor(s_)); }
double MollifiedMultiplier::mu() const { return s_ - std::floor(s_); }

Eigen::MatrixXcd MollifiedMultiplier::direct(double lambda) const {
  Eigen::MatrixXcd r = resolvent_window(grid_, n_, pot_, lambda, rows_);
  Eigen::VectorXd w = weight_vector(grid_, 0.5 + s_ + opt_.eps).head(rows_);
  const cplx pre = lambda / (M_PI * cplx(0.0, 1.0));
  return pre * (w.asDiagonal() * r * w.asDiagonal());
}

Eigen::MatrixXcd MollifiedMultiplier::combine(const Eigen::VectorXcd& c) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows_, rows_);
  for (int k = 0; k < cheb_.size(); ++k)
    if (c(k) != cplx(0.0)) out.noalias() += c(k) * samples_[k];
  return out;
}

Eigen::MatrixXcd MollifiedMultiplier::combine(const Eigen::VectorXd& c) const {
  return combine(Eigen::VectorXcd(c.cast<cplx>()));
}

Eigen::MatrixXcd MollifiedMultiplier::interpolated(double lambda) const { return combine(cheb_.basis(lambda)); }

Eigen::VectorXd MollifiedMultiplier::derivative_coeffs(double lambda, int j) const {
  return cheb_.basis_derivative(lambda, j);
}

// d^j T_theta(l) = (-1)^j theta^{-j} int T(l + theta u) m^{(j)}(u) du
Eigen::VectorXd MollifiedMultiplier::mollified_coeffs(double lambda, double theta, int j) const {
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("MollifiedMultiplier: theta must lie in (0, 1]");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(cheb_.size());
  const auto& u = moll_.nodes();
  const auto& w = moll_.weights();
  for (size_t i = 0; i < u.size(); ++i) c += (w[i] * moll_.derivative(u[i], j)) * cheb_.basis(lambda + theta * u[i]);
  double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(theta, -j) * c;
}

Eigen::VectorXcd MollifiedMultiplier::time_coeffs(const BumpProfile& phi, double t, double theta, int points) const {
  const int panels = std::max(1, points / 12);
  QuadRule q = composite_gauss(panels, 12, phi.support_lo(), phi.support_hi());
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cheb_.size());
  for (size_t i = 0; i < q.x.size(); ++i) {
    double l = q.x[i];
    double f = phi(l);
    if (f == 0.0) continue;
    cplx wgt = q.w[i] * f * std::exp(cplx(0.0, t * l));
    Eigen::VectorXd b = theta > 0.0 ? mollified_coeffs(l, theta, 0) : cheb_.basis(l);
    c += wgt * b.cast<cplx>();
  }
  return c;
}

double MollifiedMultiplier::norm_plus(const Eigen::VectorXcd& c) const {
  return op_norm2(combine(c), PowerOptions{300, 1e-10});
}

double MollifiedMultiplier::norm_full(const Eigen::VectorXcd& c) const {
  // sum c_k (T_k + conj T_k) = combine(c) + conj(combine(conj c))
  Eigen::MatrixXcd a = combine(c);
  Eigen::MatrixXcd b = combine(Eigen::VectorXcd(c.conjugate()));
  return op_norm2(Eigen::MatrixXcd(a + b.conjugate()), PowerOptions{300, 1e-10});
}

}  // namespace wavelab

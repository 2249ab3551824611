#include "wavelab/funcalc.hpp"

#include "wavelab/norms.hpp"
#include "wavelab/quadrature.hpp"

#include <boost/math/special_functions/factorials.hpp>

#include <cmath>
#include <map>
#include <sstream>

namespace wavelab {

namespace {

const cplx kI(0.0, 1.0);

double bump_f(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double bump_fp(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

// 0 for x <= 0, 1 for x >= 1
double step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return bump_f(x) / (bump_f(x) + bump_f(1.0 - x));
}
double step_deriv(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double g = bump_f(x) + bump_f(1.0 - x);
  return (bump_fp(x) * bump_f(1.0 - x) + bump_f(x) * bump_fp(1.0 - x)) / (g * g);
}

double chi(double y) { return step(2.0 - 2.0 * std::abs(y)); }
double chi_deriv(double y) { return -2.0 * (y > 0 ? 1.0 : -1.0) * step_deriv(2.0 - 2.0 * std::abs(y)); }

std::string p_name(int p) { return p == kPInf ? "inf" : std::to_string(p); }
double inv_p(int p) { return p == kPInf ? 0.0 : 1.0 / p; }

}  // namespace

double AlmostAnalytic::psi(double mu) const {
  if (mu <= 0.0) return 0.0;
  return phi(std::sqrt(mu));
}

Jet AlmostAnalytic::psi_jet(double mu, int order) const {
  if (mu <= 0.0) return Jet(0.0, order);
  return phi.apply(sqrt(Jet::variable(mu, order)));
}

cplx AlmostAnalytic::value(cplx z) const {
  double x = z.real(), y = z.imag();
  double c = chi(y);
  if (c == 0.0 || x <= mu_lo() || x >= mu_hi()) return 0.0;
  Jet j = psi_jet(x, N);
  cplx sum = 0.0, iy = kI * y, pw = 1.0;
  for (int k = 0; k <= N; ++k) {
    sum += j.coef(k) * pw;
    pw *= iy;
  }
  return c * sum;
}

cplx AlmostAnalytic::dbar(cplx z) const {
  double x = z.real(), y = z.imag();
  if (std::abs(y) >= 1.0 || x <= mu_lo() || x >= mu_hi()) return 0.0;
  Jet j = psi_jet(x, N + 1);
  cplx iy = kI * y;
  // coef(k) = psi^(k)/k!, so psi^(N+1) (iy)^N / N! = (N+1) coef(N+1) (iy)^N
  cplx top = static_cast<double>(N + 1) * j.coef(N + 1) * std::pow(iy, N);
  cplx term = chi(y) * top;
  double cp = chi_deriv(y);
  if (cp != 0.0) {
    cplx sum = 0.0, pw = 1.0;
    for (int k = 0; k <= N; ++k) {
      sum += j.coef(k) * pw;
      pw *= iy;
    }
    term += kI * cp * sum;
  }
  return 0.5 * term;
}

AlmostAnalytic almost_analytic(const BumpProfile& phi, int N) {
  phi.validate();
  if (N < 0 || N + 1 > kMaxDerivativeOrder)
    throw DomainError("almost_analytic: order N needs N + 1 <= " + std::to_string(kMaxDerivativeOrder));
  if (!phi.compact()) throw DomainError("almost_analytic: profile must be compactly supported");
  AlmostAnalytic a;
  a.phi = phi;
  a.N = N;
  return a;
}

Eigen::MatrixXcd tridiagonal_inverse(const DiscreteOperator& op, double scale, cplx z) {
  const int m = op.size();
  Eigen::VectorXcd t(m), d(m), e(m);
  for (int i = 0; i < m; ++i) t(i) = scale * op.diag(i) - z;
  auto b = [&](int i) { return scale * op.off(i); };
  d(0) = t(0);
  for (int i = 1; i < m; ++i) d(i) = t(i) - b(i - 1) * b(i - 1) / d(i - 1);
  e(m - 1) = t(m - 1);
  for (int i = m - 2; i >= 0; --i) e(i) = t(i) - b(i) * b(i) / e(i + 1);
  Eigen::MatrixXcd x(m, m);
  for (int j = 0; j < m; ++j) {
    x(j, j) = 1.0 / (d(j) + e(j) - t(j));
    for (int i = j - 1; i >= 0; --i) x(i, j) = -(b(i) / d(i)) * x(i + 1, j);
  }
  for (int j = 0; j < m; ++j)
    for (int i = j + 1; i < m; ++i) x(i, j) = x(j, i);
  return x;
}

HSResult hs_multiplier(const DiscreteOperator& op, const BumpProfile& phi, double h, int N, const HSMesh& mesh) {
  AlmostAnalytic aa = almost_analytic(phi, N);
  const int m = op.size();
  const double s2 = h * h;
  HSResult out;

  // mesh: sub-layers of [1/2, 1], then dyadic layers down to y_min
  struct Layer {
    double lo, hi;
  };
  std::vector<Layer> layers;
  for (int k = 0; k < mesh.top_panels; ++k)
    layers.push_back({0.5 + 0.5 * k / mesh.top_panels, 0.5 + 0.5 * (k + 1) / mesh.top_panels});
  for (double y = 0.5; y > mesh.y_min * (1 + 1e-12); y *= 0.5) layers.push_back({0.5 * y, y});

  struct Node {
    cplx z;
    cplx c;
  };
  std::vector<Node> nodes;
  const double xlo = aa.mu_lo(), xhi = aa.mu_hi();
  for (const Layer& L : layers) {
    QuadRule qy = gauss_legendre(mesh.y_points, L.lo, L.hi);
    double width = std::min(mesh.panel_ratio * L.lo, mesh.max_panel);
    int panels = std::max(1, static_cast<int>(std::ceil((xhi - xlo) / width)));
    QuadRule qx = composite_gauss(panels, mesh.x_points, xlo, xhi);
    for (size_t a = 0; a < qy.x.size(); ++a)
      for (size_t b = 0; b < qx.x.size(); ++b) {
        cplx z(qx.x[b], qy.x[a]);
        cplx c = qy.w[a] * qx.w[b] * aa.dbar(z);
        // resolvent norm is at most 1/y
        if (std::abs(c) / z.imag() < 1e-16) continue;
        nodes.push_back({z, c});
      }
  }
  out.nodes = static_cast<long>(nodes.size());

  // tail below y_min: |dbar| <= (N+1)|coef_{N+1}| y^N / 2, resolvent <= 1/y
  {
    QuadRule qx = composite_gauss(static_cast<int>(std::ceil((xhi - xlo) / 0.01)), 10, xlo, xhi);
    double integral = 0.0;
    for (size_t b = 0; b < qx.x.size(); ++b)
      integral += qx.w[b] * (N + 1) * std::abs(aa.psi_jet(qx.x[b], N + 1).coef(N + 1));
    out.tail_estimate = 2.0 / M_PI * 0.5 * integral * std::pow(mesh.y_min, N) / N;
  }

  // Each inverse is X_ij = p_i q_j / theta (i <= j) with p, q the Dirichlet
  // solutions from the left and right ends, so the node sum is one product.
  const int block = 1024;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd slow;
  Eigen::MatrixXcd P(m, block), Q(m, block);
  int fill = 0;
  auto flush = [&]() {
    if (fill == 0) return;
    acc.noalias() += P.leftCols(fill) * Q.leftCols(fill).transpose();
    fill = 0;
  };
  Eigen::VectorXcd p(m), q(m);
  for (const Node& nd : nodes) {
    auto t = [&](int i) { return s2 * op.diag(i) - nd.z; };
    auto b = [&](int i) { return s2 * op.off(i); };
    p(0) = 1.0;
    p(1) = -t(0) * p(0) / b(0);
    for (int i = 1; i < m - 1; ++i) p(i + 1) = -(t(i) * p(i) + b(i - 1) * p(i - 1)) / b(i);
    q(m - 1) = 1.0;
    q(m - 2) = -t(m - 1) * q(m - 1) / b(m - 2);
    for (int j = m - 2; j >= 1; --j) q(j - 1) = -(t(j) * q(j) + b(j) * q(j + 1)) / b(j - 1);
    cplx theta = t(0) * q(0) + b(0) * q(1);
    double big = std::max(p.cwiseAbs().maxCoeff(), q.cwiseAbs().maxCoeff());
    if (!(big < 1e140) || !std::isfinite(std::abs(theta)) || theta == 0.0) {
      if (slow.size() == 0) slow = Eigen::MatrixXcd::Zero(m, m);
      slow += nd.c * tridiagonal_inverse(op, s2, nd.z);
      out.fast_path = false;
      continue;
    }
    P.col(fill) = (nd.c / theta) * p;
    Q.col(fill) = q;
    if (++fill == block) flush();
  }
  flush();
  Eigen::MatrixXd res(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i <= j; ++i) {
      double v = acc(i, j).real();
      res(i, j) = v;
      res(j, i) = v;
    }
  if (slow.size() != 0) res += slow.real();
  out.matrix = (2.0 / M_PI) * res;
  return out;
}

Eigen::MatrixXd spectral_multiplier(const Eigenpairs& eig, const std::function<double(double)>& f) {
  const int m = static_cast<int>(eig.values.size());
  std::vector<int> idx;
  std::vector<double> fv;
  for (int k = 0; k < m; ++k) {
    double v = f(eig.values(k));
    if (v != 0.0) {
      idx.push_back(k);
      fv.push_back(v);
    }
  }
  if (idx.empty()) return Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd Qs(m, idx.size()), Qf(m, idx.size());
  for (size_t c = 0; c < idx.size(); ++c) {
    Qs.col(c) = eig.vectors.col(idx[c]);
    Qf.col(c) = fv[c] * eig.vectors.col(idx[c]);
  }
  return Qf * Qs.transpose();
}

Eigen::MatrixXcd spectral_multiplier_complex(const Eigenpairs& eig, const std::function<cplx(double)>& f) {
  const int m = static_cast<int>(eig.values.size());
  std::vector<int> idx;
  std::vector<cplx> fv;
  for (int k = 0; k < m; ++k) {
    cplx v = f(eig.values(k));
    if (v != 0.0) {
      idx.push_back(k);
      fv.push_back(v);
    }
  }
  if (idx.empty()) return Eigen::MatrixXcd::Zero(m, m);
  const int c = static_cast<int>(idx.size());
  Eigen::MatrixXd Qs(m, c), Qre(m, c), Qim(m, c);
  for (int k = 0; k < c; ++k) {
    Qs.col(k) = eig.vectors.col(idx[k]);
    Qre.col(k) = fv[k].real() * Qs.col(k);
    Qim.col(k) = fv[k].imag() * Qs.col(k);
  }
  Eigen::MatrixXcd out(m, m);
  out.real() = Qre * Qs.transpose();
  out.imag() = Qim * Qs.transpose();
  return out;
}

Eigen::MatrixXd profile_multiplier(const Eigenpairs& eig, const BumpProfile& phi, double h) {
  return spectral_multiplier(eig, [&](double mu) { return mu > 0.0 ? phi(h * std::sqrt(mu)) : 0.0; });
}

bool Lemma23Report::all_pass() const {
  for (const DecayFitReport& r : reports)
    if (!r.pass) return false;
  return true;
}

Lemma23Report verify_lemma23(const Eigenpairs& free_eig, const Eigenpairs& eig, const RadialGrid& grid, int n,
                             const BumpProfile& phi, const std::vector<double>& h_set, double s,
                             const std::vector<int>& p_set) {
  Lemma23Report rep;
  rep.caveat =
      "radial-sector surrogates: L^p norms use the radial measure r^{n-1} dr on the grid and are faithful for "
      "radial data only";
  const size_t nh = h_set.size();
  std::vector<double> w26(nh), w27(nh), d28(nh);
  std::map<int, std::vector<double>> p29, p30, d31, b32, b33, d34;
  Eigen::VectorXd wl = weight_vector(grid, s);   // <x>^{-s}
  Eigen::VectorXd wr = weight_vector(grid, -s);  // <x>^{s}
  for (size_t k = 0; k < nh; ++k) {
    double h = h_set[k];
    Eigen::MatrixXd a0 = profile_multiplier(free_eig, phi, h);
    Eigen::MatrixXd a = profile_multiplier(eig, phi, h);
    Eigen::MatrixXd diff = a - a0;
    w26[k] = op_norm2(Eigen::MatrixXd(wl.asDiagonal() * a0 * wr.asDiagonal()));
    w27[k] = op_norm2(Eigen::MatrixXd(wl.asDiagonal() * a * wr.asDiagonal()));
    Eigen::MatrixXcd dw = (diff * wr.asDiagonal()).cast<cplx>();
    d28[k] = op_norm2(dw);
    Eigen::MatrixXcd c0 = a0.cast<cplx>(), c1 = a.cast<cplx>(), cd = diff.cast<cplx>();
    for (int p : p_set) {
      p29[p].push_back(sector_lp_to_lp(c0, grid, n, p));
      p30[p].push_back(sector_lp_to_lp(c1, grid, n, p));
      d31[p].push_back(sector_lp_to_lp(cd, grid, n, p));
      if (p == 2) {
        b32[p].push_back(op_norm2(c0));
        b33[p].push_back(op_norm2(c1));
        d34[p].push_back(d28[k]);
      } else if (p == kPInf) {
        b32[p].push_back(sector_l2_to_linf(c0, grid, n));
        b33[p].push_back(sector_l2_to_linf(c1, grid, n));
        d34[p].push_back(sector_l2_to_linf(dw, grid, n));
      }
    }
  }
  const double span = 0.99 * h_set.front() / h_set.back();
  rep.reports.push_back(ratio_report("2.26", "weighted free multiplier", "h", h_set, w26, 3.0));
  rep.reports.push_back(ratio_report("2.27", "weighted perturbed multiplier", "h", h_set, w27, 3.0));
  rep.reports.push_back(exponent_report("2.28", "weighted L2 difference", "h", h_set, d28, 2.0, 0.3,
                                        Bound::two_sided, span));
  for (int p : p_set) {
    std::string tag = "p=" + p_name(p);
    double q = n * std::abs(0.5 - inv_p(p));
    rep.reports.push_back(ratio_report("2.29", "free L^p bound " + tag, "h", h_set, p29[p], 3.0));
    rep.reports.push_back(ratio_report("2.30", "perturbed L^p bound " + tag, "h", h_set, p30[p], 3.0));
    rep.reports.push_back(exponent_report("2.31", "L^p difference " + tag, "h", h_set, d31[p], 2.0, 0.3,
                                          Bound::two_sided, span));
    if (p == 1) {
      rep.missing.push_back("2.32 p=1: L2->L1 is unbounded on the sector grid measure; not computed");
      rep.missing.push_back("2.33 p=1: L2->L1 not computed");
      rep.missing.push_back("2.34 p=1: L2->L1 not computed");
      continue;
    }
    rep.reports.push_back(exponent_report("2.32", "free L2->L^p " + tag, "h", h_set, b32[p], -q, 0.3,
                                          Bound::two_sided, span));
    rep.reports.push_back(exponent_report("2.33", "perturbed L2->L^p " + tag, "h", h_set, b33[p], -q, 0.3,
                                          Bound::two_sided, span));
    rep.reports.push_back(exponent_report("2.34", "weighted L2->L^p difference " + tag, "h", h_set, d34[p],
                                          2.0 - q, 0.3, Bound::two_sided, span));
  }
  return rep;
}

}  // namespace wavelab

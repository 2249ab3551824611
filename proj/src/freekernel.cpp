#include "wavelab/freekernel.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <functional>
#include <iomanip>

namespace wavelab {

namespace {

void check_inputs(const BumpProfile& phi, double h, double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) throw SigmaError("kernel: sigma must be > 0");
  if (!std::isfinite(h) || h <= 0.0 || h > 1.0) throw ScaleError("kernel: h must lie in (0, 1]");
  if (!phi.compact()) throw DomainError("kernel: profile must have compact support");
}

double prefactor(int n, double sigma) {
  double nu = 0.5 * (n - 2);
  return std::pow(2.0 * M_PI, -(nu + 1.0)) * std::pow(sigma, -2.0 * nu);
}

// Adaptive composite Gauss on [lo, hi] for an integrand oscillating at angular frequency omega.
KernelEval integrate(const std::function<cplx(double)>& f, double lo, double hi, double omega,
                     const KernelQuadOptions& opt) {
  double period = 2.0 * M_PI / std::max(omega, 1e-300);
  int panels = std::max(opt.min_panels, static_cast<int>(std::ceil((hi - lo) * opt.panels_per_period / period)));
  auto run = [&](int p, double& abs_sum) {
    QuadRule q = composite_gauss(p, opt.points, lo, hi);
    cplx s = 0.0;
    abs_sum = 0.0;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
      cplx v = f(q.x[i]);
      s += q.w[i] * v;
      abs_sum += q.w[i] * std::abs(v);
    }
    return s;
  };
  double scale = 0.0;
  cplx prev = run(panels, scale);
  for (int d = 0; d < opt.max_doublings; ++d) {
    panels *= 2;
    cplx cur = run(panels, scale);
    double err = std::abs(cur - prev);
    if (err <= opt.rel_tol * std::abs(cur) || err <= opt.abs_floor * scale) {
      KernelEval e;
      e.value = cur;
      e.error = err;
      e.scale = scale;
      e.panels = panels;
      return e;
    }
    prev = cur;
  }
  throw QuadratureError("kernel quadrature: panel refinement stalled");
}

}  // namespace

KernelEval eval_Kh_detailed(int n, const BumpProfile& phi, double h, double sigma, double t,
                            const KernelQuadOptions& opt) {
  check_inputs(phi, h, sigma);
  BesselOrder ord = BesselOrder::from_dimension(n);
  auto f = [&](double l) {
    double a = phi(h * l);
    if (a == 0.0) return cplx(0.0);
    return std::polar(a * caljnu(ord, sigma * l) * l, t * l);
  };
  KernelEval e = integrate(f, phi.a_lo / h, phi.a_hi / h, std::abs(t) + sigma, opt);
  double c = prefactor(n, sigma);
  e.value *= c;
  e.error *= c;
  e.scale *= c;
  return e;
}

cplx eval_Kh(int n, const BumpProfile& phi, double h, double sigma, double t, const KernelQuadOptions& opt) {
  return eval_Kh_detailed(n, phi, h, sigma, t, opt).value;
}

KernelEval eval_Kh_pm_detailed(int n, const BumpProfile& phi, double h, double sigma, double t, Sign sign,
                               const KernelQuadOptions& opt) {
  check_inputs(phi, h, sigma);
  BesselOrder ord = BesselOrder::from_dimension(n);
  double w = t + sgn(sign) * sigma;
  auto f = [&](double l) {
    double a = phi(h * l);
    if (a == 0.0) return cplx(0.0);
    SymbolPair b = symbol_split(ord, sigma * l);
    cplx amp = sign == Sign::plus ? b.b_plus : b.b_minus;
    return std::polar(a * l, w * l) * amp;
  };
  KernelEval e = integrate(f, phi.a_lo / h, phi.a_hi / h, std::abs(w), opt);
  double c = prefactor(n, sigma);
  e.value *= c;
  e.error *= c;
  e.scale *= c;
  return e;
}

cplx eval_Kh_pm(int n, const BumpProfile& phi, double h, double sigma, double t, Sign sign,
                const KernelQuadOptions& opt) {
  return eval_Kh_pm_detailed(n, phi, h, sigma, t, sign, opt).value;
}

cplx free_resolvent_kernel(int n, double lambda, Sign sign, double d) {
  if (!std::isfinite(lambda) || lambda <= 0.0) throw DomainError("free_resolvent_kernel: lambda must be > 0");
  if (!std::isfinite(d) || d <= 0.0) throw DomainError("free_resolvent_kernel: d must be > 0");
  BesselOrder ord = BesselOrder::from_dimension(n);
  return sgn(sign) * cplx(0.0, 0.25) * std::pow(lambda / (2.0 * M_PI * d), ord.nu) * hankel_H(ord, sign, lambda * d);
}

double sphere_area(int d) { return 2.0 * std::pow(M_PI, 0.5 * d) / boost::math::tgamma(0.5 * d); }

PlancherelResult plancherel_check(int n, const BumpProfile& phi, double h, double sigma, int m, double t_max) {
  check_inputs(phi, h, sigma);
  if (m < 0) throw DomainError("plancherel_check: m must be >= 0");
  BesselOrder ord = BesselOrder::from_dimension(n);
  PlancherelResult r;

  // time side, using K(sigma, -t) = conj K(sigma, t)
  double width = 0.5 * h;
  int panels = static_cast<int>(std::ceil(t_max / width));
  QuadRule qt = composite_gauss(panels, 10, 0.0, t_max);
  double ts = 0.0;
  for (std::size_t i = 0; i < qt.x.size(); ++i) {
    double t = qt.x[i];
    double k = std::abs(eval_Kh(n, phi, h, sigma, t));
    ts += qt.w[i] * std::pow(t, 2 * m) * k * k;
  }
  r.time_side = 2.0 * ts;
  double kend = std::abs(eval_Kh(n, phi, h, sigma, t_max));
  r.tail_estimate = 2.0 * std::pow(t_max, 2 * m + 1) * kend * kend;

  // frequency side: int |t^m K|^2 dt = c^2 2 pi int |d^m g|^2 dl, g(l) = phi(h l) l J_nu(sigma l)
  double c = prefactor(n, sigma);
  QuadRule ql = composite_gauss(64, 10, phi.a_lo / h, phi.a_hi / h);
  double ls = 0.0;
  for (std::size_t i = 0; i < ql.x.size(); ++i) {
    double l = ql.x[i];
    Jet p = phi.jet(h * l, m);
    double hk = 1.0;
    for (int k = 0; k <= m; ++k, hk *= h) p.coef(k) *= hk;
    Jet lj = Jet::variable(l, m);
    Jet jj(0.0, m);
    double fact = 1.0, sk = 1.0;
    for (int k = 0; k <= m; ++k) {
      if (k > 0) {
        fact *= k;
        sk *= sigma;
      }
      jj.coef(k) = sk * caljnu_deriv(ord, k, sigma * l) / fact;
    }
    double dm = (p * lj * jj).deriv(m);
    ls += ql.w[i] * dm * dm;
  }
  r.lambda_side = c * c * 2.0 * M_PI * ls;
  r.rel_gap = std::abs(r.time_side - r.lambda_side) / r.lambda_side;
  return r;
}

cplx angular_average_Kh(int n, const BumpProfile& phi, double h, double t, double r, double rp, int theta_points) {
  if (n < 3) throw DomainError("angular_average_Kh: needs n >= 3");
  QuadRule q = composite_gauss(std::max(1, theta_points / 16), 16, 0.0, M_PI);
  cplx s = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    double th = q.x[i];
    double d = std::sqrt(std::max(r * r + rp * rp - 2.0 * r * rp * std::cos(th), 1e-300));
    d = std::max(d, 1e-12);
    s += q.w[i] * std::pow(std::sin(th), n - 2) * eval_Kh(n, phi, h, d, t);
  }
  return sphere_area(n - 1) * s;
}

void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& rows) {
  os << "sigma,t,h,re,im\n";
  os << std::setprecision(17);
  for (const KernelSample& k : rows)
    os << k.sigma << ',' << k.t << ',' << k.h << ',' << k.value.real() << ',' << k.value.imag() << '\n';
}

}  // namespace wavelab

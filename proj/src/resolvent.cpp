#include "wavelab/resolvent.hpp"

#include "complex_bessel.hpp"
#include "wavelab/fit.hpp"
#include "wavelab/norms.hpp"

#include <Eigen/LU>

#include <cmath>
#include <iomanip>

namespace wavelab {

namespace {

const cplx kI(0.0, 1.0);

Eigen::MatrixXcd green_from_solutions(const Eigen::VectorXcd& u1, const Eigen::VectorXcd& u2, double dr) {
  const int m = static_cast<int>(u1.size());
  Eigen::MatrixXcd g(m, m);
  const cplx c = kI * (0.5 * M_PI) * dr;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) g(i, j) = c * (i < j ? u1(i) * u2(j) : u1(j) * u2(i));
  return g;
}

double inverse_norm_of(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu, int m) {
  return op_norm2(
      m, [&](const Eigen::VectorXcd& x) { return Eigen::VectorXcd(lu.solve(x)); },
      [&](const Eigen::VectorXcd& y) { return Eigen::VectorXcd(lu.adjoint().solve(y)); }, PowerOptions{200, 1e-8});
}

ResolventRecord solve_with_green(const RadialGrid& grid, int n, const PotentialSpec& pot, Eigen::MatrixXcd r0,
                                 double lambda, Sign sign, double s, double s1, double eta, const LSOptions& opt) {
  (void)n;
  ResolventRecord rec;
  rec.lambda = lambda;
  rec.sign = sign;
  rec.s = s;
  rec.s1 = s1;
  rec.eta = eta;
  rec.method = ResolventMethod::lippmann_schwinger;
  const int m = grid.M;
  if (pot.c == 0.0) {
    rec.matrix = std::move(r0);
    rec.K_norm = 0.0;
    rec.inverse_norm = 1.0;
    rec.rcond = 1.0;
    rec.identity_residual = 0.0;
    return rec;
  }
  Eigen::VectorXd v = potential_vector(grid, pot);
  Eigen::MatrixXcd a = r0 * v.asDiagonal();
  a.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  rec.rcond = lu.rcond();
  if (!(rec.rcond > 1e-13)) throw IllConditioned("ls_solve: 1 + R0 V is numerically singular", 1.0 / rec.rcond);
  rec.matrix = lu.solve(r0);
  if (opt.diagnostics) {
    Eigen::VectorXd wl = weight_vector(grid, -s1).cwiseProduct(v);
    Eigen::VectorXd wr = weight_vector(grid, s);
    Eigen::MatrixXcd k = wl.asDiagonal() * r0 * wr.asDiagonal();
    rec.K_norm = op_norm2(k, PowerOptions{200, 1e-8});
    k.diagonal().array() += 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lk(k);
    rec.inverse_norm = inverse_norm_of(lk, m);
    if (rec.inverse_norm > opt.max_inverse_norm)
      throw IllConditioned("ls_solve: ||(1+K)^{-1}|| above the accepted bound", rec.inverse_norm);
    Eigen::MatrixXcd res = rec.matrix - r0 + r0 * (v.asDiagonal() * rec.matrix);
    rec.identity_residual = op_norm2(res, PowerOptions{100, 1e-6}) / op_norm2(rec.matrix, PowerOptions{100, 1e-6});
  }
  return rec;
}

}  // namespace

std::string to_string(ResolventMethod m) {
  switch (m) {
    case ResolventMethod::green_function:
      return "green_function";
    case ResolventMethod::lippmann_schwinger:
      return "lippmann_schwinger";
    case ResolventMethod::complex_shift:
      return "complex_shift";
  }
  return "?";
}

Eigen::MatrixXcd free_green_matrix(const RadialGrid& grid, int n, double lambda, Sign sign) {
  if (!std::isfinite(lambda) || lambda <= 0.0) throw DomainError("free_green_matrix: lambda must be > 0");
  BesselOrder ord = BesselOrder::from_dimension(n);
  const int m = grid.M;
  Eigen::VectorXcd u1(m), u2(m);
  for (int i = 0; i < m; ++i) {
    double r = grid.node(i);
    double sr = std::sqrt(r);
    u1(i) = sr * bessel_J(ord, lambda * r);
    u2(i) = sr * hankel_H(ord, Sign::plus, lambda * r);
  }
  Eigen::MatrixXcd g = green_from_solutions(u1, u2, grid.dr());
  if (sign == Sign::minus) g = g.conjugate().eval();
  return g;
}

Eigen::MatrixXcd free_green_matrix_complex(const RadialGrid& grid, int n, cplx k) {
  if (!(k.imag() >= 0.0) || k.real() <= 0.0) throw DomainError("free_green_matrix_complex: need Re k > 0, Im k >= 0");
  double nu = 0.5 * (n - 2);
  const int m = grid.M;
  Eigen::VectorXcd u1(m), u2(m);
  for (int i = 0; i < m; ++i) {
    double r = grid.node(i);
    double sr = std::sqrt(r);
    detail::BesselPair b = detail::complex_bessel(nu, k * r);
    u1(i) = sr * b.j;
    u2(i) = sr * b.h_plus;
  }
  return green_from_solutions(u1, u2, grid.dr());
}

double delta_residual(const RadialGrid& grid, int n, double lambda, Sign sign, int col, double r_min) {
  if (col < 1 || col > grid.M - 2) throw DomainError("delta_residual: column must be interior");
  Eigen::MatrixXcd g = free_green_matrix(grid, n, lambda, sign);
  DiscreteOperator op = build_G0(grid, n);
  Eigen::VectorXcd y = op.apply(Eigen::VectorXcd(g.col(col))) - lambda * lambda * g.col(col);
  double worst = 0.0;
  for (int i = 1; i < grid.M - 1; ++i)
    if (i != col && grid.node(i) >= r_min) worst = std::max(worst, std::abs(y(i)));
  return worst / std::abs(y(col));
}

cplx normalized_wronskian(int n, double lambda, double r) {
  BesselOrder ord = BesselOrder::from_dimension(n);
  double z = lambda * r;
  double j = bessel_J(ord, z), jp = bessel_J_deriv(ord, z);
  cplx h = hankel_H(ord, Sign::plus, z), hp = hankel_H_deriv(ord, Sign::plus, z);
  cplx w = r * lambda * (j * hp - jp * h);
  return w * M_PI / (2.0 * kI);
}

LSSystem build_ls_system(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, Sign sign,
                         double s, double s1) {
  Eigen::MatrixXcd r0 = free_green_matrix(grid, n, lambda, sign);
  Eigen::VectorXd wl = weight_vector(grid, -s1).cwiseProduct(potential_vector(grid, pot));
  Eigen::VectorXd wr = weight_vector(grid, s);
  LSSystem sys;
  sys.K = wl.asDiagonal() * r0 * wr.asDiagonal();
  sys.K_norm = op_norm2(sys.K, PowerOptions{200, 1e-8});
  Eigen::MatrixXcd a = sys.K;
  a.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  sys.inverse_norm = inverse_norm_of(lu, grid.M);
  return sys;
}

ResolventRecord ls_solve(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, Sign sign,
                         double s, double s1, const LSOptions& opt) {
  pot.validate(n);
  return solve_with_green(grid, n, pot, free_green_matrix(grid, n, lambda, sign), lambda, sign, s, s1, 0.0, opt);
}

ResolventRecord ls_solve_shifted(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, double eta,
                                 const LSOptions& opt) {
  pot.validate(n);
  cplx k = std::sqrt(cplx(lambda * lambda, eta));
  double s1 = pot.delta - 0.5;
  return solve_with_green(grid, n, pot, free_green_matrix_complex(grid, n, k), lambda, Sign::plus, 0.55, s1, eta,
                          opt);
}

ResolventRecord complex_shift_resolvent(const DiscreteOperator& op, double lambda, double eta) {
  ResolventRecord rec;
  rec.lambda = lambda;
  rec.sign = Sign::plus;
  rec.eta = eta;
  rec.method = ResolventMethod::complex_shift;
  Eigen::MatrixXcd a = op.matrix.cast<cplx>();
  a.diagonal().array() -= cplx(lambda * lambda, eta);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  rec.rcond = lu.rcond();
  rec.matrix = lu.inverse();
  return rec;
}

Eigen::MatrixXcd weighted(const Eigen::MatrixXcd& a, const RadialGrid& grid, double left, double right) {
  return weight_vector(grid, left).asDiagonal() * a * weight_vector(grid, right).asDiagonal();
}

Eigen::MatrixXcd calR(const ResolventRecord& rec, const RadialGrid& grid, double s, double eps) {
  double w = 0.5 + s + eps;
  return rec.lambda * weighted(rec.matrix, grid, w, w);
}

LAScan la_norm_scan(const RadialGrid& grid, int n, const PotentialSpec& pot, const std::vector<double>& lambdas,
                    Sign sign, double eps, bool free) {
  LAScan scan;
  std::vector<double> xs, ys;
  PotentialSpec p = pot;
  if (free) p.c = 0.0;
  double w = 0.5 + eps;
  for (double l : lambdas) {
    LAPoint pt;
    pt.lambda = l;
    pt.sign = sign;
    pt.method = free ? "green_function" : "lippmann_schwinger";
    try {
      ResolventRecord rec = ls_solve(grid, n, p, l, sign, 0.5 + eps, pot.delta - 0.5);
      pt.norm = op_norm2(weighted(rec.matrix, grid, w, w));
      pt.cond = rec.inverse_norm;
      pt.K_norm = rec.K_norm;
      xs.push_back(l);
      ys.push_back(pt.norm);
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
    scan.points.push_back(pt);
  }
  if (xs.size() >= 2) scan.slope = loglog_slope(xs, ys);
  double mx = 0.0, mn = std::numeric_limits<double>::infinity();
  for (const LAPoint& pt : scan.points)
    if (pt.ok) {
      mx = std::max(mx, pt.lambda * pt.norm);
      mn = std::min(mn, pt.lambda * pt.norm);
    }
  scan.sup_lambda_norm = mx;
  scan.ratio = mx / mn;
  scan.lambda_K = scan.lambda_inv = std::numeric_limits<double>::infinity();
  for (int i = static_cast<int>(scan.points.size()) - 1; i >= 0; --i) {
    const LAPoint& pt = scan.points[i];
    if (!pt.ok) break;
    if (pt.K_norm < 0.5) scan.lambda_K = pt.lambda;
    else break;
  }
  for (int i = static_cast<int>(scan.points.size()) - 1; i >= 0; --i) {
    const LAPoint& pt = scan.points[i];
    if (!pt.ok) break;
    if (pt.cond <= 2.0) scan.lambda_inv = pt.lambda;
    else break;
  }
  return scan;
}

namespace {

Eigen::MatrixXcd calR_at(const RadialGrid& grid, int n, const PotentialSpec& pot, double l, Sign sign, double s,
                         double eps, bool free) {
  PotentialSpec p = pot;
  if (free) p.c = 0.0;
  LSOptions opt;
  opt.diagnostics = false;
  ResolventRecord rec = ls_solve(grid, n, p, l, sign, 0.5 + eps, pot.delta - 0.5, opt);
  return calR(rec, grid, s, eps);
}

Eigen::MatrixXcd central_difference(const RadialGrid& grid, int n, const PotentialSpec& pot, int j, double lambda,
                                    Sign sign, double s, double eps, double dl, bool free, bool& noisy) {
  auto f = [&](double l) { return calR_at(grid, n, pot, l, sign, s, eps, free); };
  noisy = false;
  if (j == 0) return f(lambda);
  if (j == 1) {
    Eigen::MatrixXcd a = f(lambda + dl), b = f(lambda - dl);
    double na = op_norm2(a);
    Eigen::MatrixXcd d = a - b;
    if (op_norm2(d) < 1e-11 * na) noisy = true;
    return d / (2.0 * dl);
  }
  if (j == 2) {
    Eigen::MatrixXcd a = f(lambda + dl), b = f(lambda), c = f(lambda - dl);
    Eigen::MatrixXcd d = a - 2.0 * b + c;
    if (op_norm2(d) < 1e-10 * op_norm2(b)) noisy = true;
    return d / (dl * dl);
  }
  throw DomainError("resolvent_derivative: j must be 0, 1 or 2");
}

}  // namespace

DerivativeResult resolvent_derivative(const RadialGrid& grid, int n, const PotentialSpec& pot, int j, double lambda,
                                      Sign sign, double s, double eps, double dl, bool free) {
  if (s < 0.0 || s > 0.5 * (n - 1)) throw DomainError("resolvent_derivative: s must lie in [0, (n-1)/2]");
  DerivativeResult r;
  bool n1 = false, n2 = false;
  Eigen::MatrixXcd coarse = central_difference(grid, n, pot, j, lambda, sign, s, eps, dl, free, n1);
  if (j == 0) {
    r.matrix = coarse;
    r.norm = r.norm_coarse = r.norm_fine = op_norm2(coarse);
    return r;
  }
  Eigen::MatrixXcd fine = central_difference(grid, n, pot, j, lambda, sign, s, eps, 0.5 * dl, free, n2);
  r.norm_coarse = op_norm2(coarse);
  r.norm_fine = op_norm2(fine);
  r.matrix = fine + (fine - coarse) / 3.0;
  r.norm = op_norm2(r.matrix);
  r.consistency = std::abs(r.norm_fine - r.norm_coarse) / r.norm_fine;
  r.below_noise = n1 || n2;
  return r;
}

HolderScan holder_scan(const RadialGrid& grid, int n, const PotentialSpec& pot, double lambda, Sign sign, double s,
                       double eps, const std::vector<double>& gaps, double dl, bool free) {
  HolderScan h;
  h.m = static_cast<int>(std::floor(s));
  h.mu = s - h.m;
  h.gaps = gaps;
  bool noisy = false;
  Eigen::MatrixXcd base = central_difference(grid, n, pot, h.m, lambda, sign, s, eps, dl, free, noisy);
  std::vector<double> xs, ys;
  for (double g : gaps) {
    Eigen::MatrixXcd other = central_difference(grid, n, pot, h.m, lambda + g, sign, s, eps, dl, free, noisy);
    double d = op_norm2(Eigen::MatrixXcd(other - base));
    h.differences.push_back(d);
    h.quotients.push_back(d / std::pow(g, h.mu));
    xs.push_back(g);
    ys.push_back(d);
  }
  if (xs.size() >= 2) h.slope = loglog_slope(xs, ys);
  return h;
}

void write_la_csv(std::ostream& os, const std::vector<LAPoint>& rows) {
  os << "lambda,sign,norm,cond,method\n" << std::setprecision(17);
  for (const LAPoint& p : rows)
    os << p.lambda << ',' << (p.sign == Sign::plus ? '+' : '-') << ',' << (p.ok ? p.norm : NAN) << ',' << p.cond
       << ',' << p.method << '\n';
}

}  // namespace wavelab

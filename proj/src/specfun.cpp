#include "wavelab/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <vector>

namespace wavelab {

namespace {

void check_arg(double z, const char* what) {
  if (!std::isfinite(z) || z <= 0.0)
    throw DomainError(std::string(what) + ": argument must be positive and finite");
}

}  // namespace

BesselOrder::BesselOrder(double v) : nu(v) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError("BesselOrder: nu must be >= 0");
}

BesselOrder BesselOrder::from_dimension(int n) {
  if (n < 2) throw DomainError("BesselOrder: dimension must be >= 2");
  return BesselOrder(0.5 * (n - 2));
}

double bessel_J(BesselOrder order, double z) {
  check_arg(z, "bessel_J");
  return boost::math::cyl_bessel_j(order.nu, z);
}

double bessel_Y(BesselOrder order, double z) {
  check_arg(z, "bessel_Y");
  return boost::math::cyl_neumann(order.nu, z);
}

cplx hankel_H(BesselOrder order, Sign sign, double z) {
  check_arg(z, "hankel_H");
  return {boost::math::cyl_bessel_j(order.nu, z), sgn(sign) * boost::math::cyl_neumann(order.nu, z)};
}

double caljnu(BesselOrder order, double z) {
  check_arg(z, "caljnu");
  return std::pow(z, order.nu) * boost::math::cyl_bessel_j(order.nu, z);
}

double caljnu_deriv(BesselOrder order, int k, double z) {
  check_arg(z, "caljnu_deriv");
  if (k < 0) throw DomainError("caljnu_deriv: k must be >= 0");
  struct Term {
    double coef;
    double p;
    double q;
  };
  std::vector<Term> terms{{1.0, order.nu, order.nu}};
  for (int d = 0; d < k; ++d) {
    std::vector<Term> next;
    next.reserve(2 * terms.size());
    for (const Term& t : terms) {
      next.push_back({t.coef, t.p, t.q - 1.0});
      if (t.p != t.q) next.push_back({t.coef * (t.p - t.q), t.p - 1.0, t.q});
    }
    // merge equal (p, q)
    std::vector<Term> merged;
    for (const Term& t : next) {
      bool found = false;
      for (Term& m : merged)
        if (m.p == t.p && m.q == t.q) {
          m.coef += t.coef;
          found = true;
          break;
        }
      if (!found) merged.push_back(t);
    }
    terms = std::move(merged);
  }
  double sum = 0.0;
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    double j;
    double q = t.q;
    if (q >= 0.0) {
      j = boost::math::cyl_bessel_j(q, z);
    } else if (std::floor(q) == q) {
      int m = static_cast<int>(-q);
      j = (m % 2 ? -1.0 : 1.0) * boost::math::cyl_bessel_j(-q, z);
    } else {
      double a = -q;
      j = std::cos(M_PI * a) * boost::math::cyl_bessel_j(a, z) - std::sin(M_PI * a) * boost::math::cyl_neumann(a, z);
    }
    sum += t.coef * std::pow(z, t.p) * j;
  }
  return sum;
}

cplx SymbolPair::recombine() const {
  cplx e(std::cos(z), std::sin(z));
  return e * b_plus + std::conj(e) * b_minus;
}

SymbolPair symbol_split(BesselOrder order, double z) {
  check_arg(z, "symbol_split");
  cplx hp = hankel_H(order, Sign::plus, z);
  cplx e(std::cos(z), std::sin(z));
  double zn = std::pow(z, order.nu);
  SymbolPair s;
  s.z = z;
  s.b_plus = 0.5 * zn * hp * std::conj(e);
  s.b_minus = std::conj(s.b_plus);
  return s;
}

static cplx hankel_general(double v, Sign sign, double z) {
  if (v >= 0.0)
    return {boost::math::cyl_bessel_j(v, z), sgn(sign) * boost::math::cyl_neumann(v, z)};
  // H^+_{-a} = e^{i pi a} H^+_a,  H^-_{-a} = e^{-i pi a} H^-_a
  double a = -v;
  cplx h(boost::math::cyl_bessel_j(a, z), sgn(sign) * boost::math::cyl_neumann(a, z));
  return std::polar(1.0, sgn(sign) * M_PI * a) * h;
}

cplx hankel_H_deriv(BesselOrder order, Sign sign, double z) {
  check_arg(z, "hankel_H_deriv");
  return hankel_general(order.nu - 1.0, sign, z) - (order.nu / z) * hankel_general(order.nu, sign, z);
}

double bessel_J_deriv(BesselOrder order, double z) { return hankel_H_deriv(order, Sign::plus, z).real(); }

double bessel_J_zero(BesselOrder order, int k) {
  if (k < 1) throw DomainError("bessel_J_zero: k must be >= 1");
  return boost::math::cyl_bessel_j_zero(order.nu, k);
}

}  // namespace wavelab

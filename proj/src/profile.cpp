#include "wavelab/profile.hpp"

#include "wavelab/specfun.hpp"

#include <cmath>
#include <sstream>

namespace wavelab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double value_of(double x) { return x; }
double value_of(const Jet& x) { return x.value(); }

template <class T>
T constant_like(const T& x, double c) {
  if constexpr (std::is_same_v<T, double>) {
    (void)x;
    return c;
  } else {
    return Jet(c, x.order());
  }
}

// exp(-1/x) for x > 0
template <class T>
T edge(const T& x) {
  using std::exp;
  return exp(-1.0 / x);
}

// Smooth step: 0 for x <= 0, 1 for x >= 1.
template <class T>
T smooth_step(const T& x) {
  double v = value_of(x);
  if (v <= 0.0) return constant_like(x, 0.0);
  if (v >= 1.0) return constant_like(x, 1.0);
  T a = edge(x);
  T b = edge(1.0 - x);
  return a / (a + b);
}

template <class T>
T bump_impl(double a, double b, const T& s) {
  double v = value_of(s);
  if (v <= a || v >= b) return constant_like(s, 0.0);
  using std::exp;
  return exp(-1.0 / ((s - a) * (b - s)));
}

template <class T>
T plateau_impl(double a, double b, const T& s) {
  double v = value_of(s);
  if (v <= a || v >= b) return constant_like(s, 0.0);
  T left = smooth_step((s - a) / a);
  if (b == kInf) return left;
  return left * smooth_step((b - s) / (0.5 * b));
}

Jet compose(const Jet& g, const Jet& s) {
  // g holds Taylor coefficients about s.value(); s - s.value() has zero constant term.
  int n = s.order();
  Jet d = s;
  d.coef(0) = 0.0;
  Jet result(g.coef(n), n);
  for (int k = n - 1; k >= 0; --k) {
    result = result * d;
    result.coef(0) += g.coef(k);
  }
  return result;
}

}  // namespace

BumpProfile BumpProfile::bump(double a_lo, double a_hi) {
  BumpProfile p{a_lo, a_hi, ProfileKind::bump, 0.0};
  p.validate();
  return p;
}

BumpProfile BumpProfile::plateau(double a_lo, double a_hi) {
  BumpProfile p{a_lo, a_hi, ProfileKind::plateau, 0.0};
  p.validate();
  return p;
}

BumpProfile BumpProfile::step(double a) { return plateau(a, kInf); }

BumpProfile BumpProfile::step_derivative(double a) {
  BumpProfile p{a, kInf, ProfileKind::plateau_derivative, 0.0};
  p.validate();
  return p;
}

BumpProfile BumpProfile::tilted(double power) const {
  BumpProfile p = *this;
  p.q += power;
  return p;
}

void BumpProfile::validate() const {
  if (!(a_lo > 0.0) || !(a_hi > a_lo) || std::isnan(a_hi))
    throw DomainError("BumpProfile: need 0 < a_lo < a_hi");
  if (kind == ProfileKind::bump && !compact()) throw DomainError("BumpProfile: bump needs finite a_hi");
  if (kind == ProfileKind::plateau && compact() && a_hi < 4.0 * a_lo)
    throw DomainError("BumpProfile: plateau needs a_hi >= 4 a_lo");
  if (!std::isfinite(q)) throw DomainError("BumpProfile: tilt must be finite");
}

Jet BumpProfile::jet(double s, int order) const {
  Jet base;
  switch (kind) {
    case ProfileKind::bump:
      base = bump_impl(a_lo, a_hi, Jet::variable(s, order));
      break;
    case ProfileKind::plateau:
      base = plateau_impl(a_lo, a_hi, Jet::variable(s, order));
      break;
    case ProfileKind::plateau_derivative:
      base = plateau_impl(a_lo, a_hi, Jet::variable(s, order + 1)).derivative();
      break;
  }
  if (q != 0.0 && s > 0.0) base = base * pow(Jet::variable(s, order), q);
  return base;
}

double BumpProfile::operator()(double s) const {
  if (!(s > a_lo && s < a_hi)) return 0.0;
  double v;
  switch (kind) {
    case ProfileKind::bump:
      v = bump_impl(a_lo, a_hi, s);
      break;
    case ProfileKind::plateau:
      v = plateau_impl(a_lo, a_hi, s);
      break;
    default:
      v = jet(s, 0).value();
      return v;
  }
  if (q != 0.0) v *= std::pow(s, q);
  return v;
}

Jet BumpProfile::apply(const Jet& s) const { return compose(jet(s.value(), s.order()), s); }

std::string BumpProfile::describe() const {
  std::ostringstream os;
  os << to_string(kind) << "[" << a_lo << "," << a_hi << "]";
  if (q != 0.0) os << "*s^" << q;
  return os.str();
}

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "bump") return ProfileKind::bump;
  if (name == "plateau") return ProfileKind::plateau;
  if (name == "plateau_derivative") return ProfileKind::plateau_derivative;
  throw DomainError("unknown profile kind '" + name + "'");
}

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::bump:
      return "bump";
    case ProfileKind::plateau:
      return "plateau";
    case ProfileKind::plateau_derivative:
      return "plateau_derivative";
  }
  return "?";
}

BumpProfile plateau_cover(const BumpProfile& phi) { return BumpProfile::plateau(0.5 * phi.a_lo, 2.0 * phi.a_hi); }

}  // namespace wavelab

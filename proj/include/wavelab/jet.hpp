#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace wavelab {

// Truncated Taylor series f(x0 + e) = sum_k c[k] e^k, used to get exact
// derivatives of the closed-form profiles.
class Jet {
 public:
  Jet() = default;
  Jet(double value, int order) : c_(order + 1, 0.0) { c_[0] = value; }

  static Jet variable(double x0, int order) {
    Jet j(x0, order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }
  double coef(int k) const { return c_[k]; }
  double& coef(int k) { return c_[k]; }

  // k-th derivative
  double deriv(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * c_[k];
  }

  // Jet of f' from the jet of f (order drops by one).
  Jet derivative() const {
    Jet d(0.0, order() - 1);
    for (int k = 0; k < order(); ++k) d.c_[k] = (k + 1) * c_[k + 1];
    return d;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(double a) {
    c_[0] += a;
    return *this;
  }
  Jet& operator*=(double a) {
    for (double& x : c_) x *= a;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double b, Jet a) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a += -b; }
  friend Jet operator-(double b, const Jet& a) {
    Jet r = a;
    r *= -1.0;
    return r += b;
  }
  friend Jet operator-(const Jet& a) {
    Jet r = a;
    r *= -1.0;
    return r;
  }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double b, Jet a) { return a *= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(0.0, a.order());
    for (int k = 0; k <= a.order(); ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(0.0, a.order());
    for (int k = 0; k <= a.order(); ++k) {
      double s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }
  friend Jet operator/(double a, const Jet& b) { return Jet(a, b.order()) / b; }
  friend Jet operator/(Jet a, double b) { return a *= 1.0 / b; }

  friend Jet exp(const Jet& a) {
    Jet r(std::exp(a.c_[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * a.c_[j] * r.c_[k - j];
      r.c_[k] = s / k;
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r(std::log(a.c_[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
      double s = a.c_[k];
      for (int j = 1; j < k; ++j) s -= (static_cast<double>(j) / k) * r.c_[j] * a.c_[k - j];
      r.c_[k] = s / a.c_[0];
    }
    return r;
  }

  friend Jet sqrt(const Jet& a) {
    Jet r(std::sqrt(a.c_[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
      double s = a.c_[k];
      for (int j = 1; j < k; ++j) s -= r.c_[j] * r.c_[k - j];
      r.c_[k] = s / (2.0 * r.c_[0]);
    }
    return r;
  }

  friend Jet pow(const Jet& a, double q) { return exp(q * log(a)); }

 private:
  std::vector<double> c_;
};

}  // namespace wavelab

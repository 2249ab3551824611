#include "wavelab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavelab {

namespace {

void line_fit(const std::vector<double>& lx, const std::vector<double>& ly, double& slope, double& icept) {
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw FitError("fit: degenerate x span");
  slope = sxy / sxx;
  icept = my - slope * mx;
}

}  // namespace

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, double min_span) {
  if (x.size() != y.size()) throw FitError("fit_power_law: size mismatch");
  if (x.size() < 4) throw FitError("fit_power_law: need at least 4 samples");
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw FitError("fit_power_law: samples must be positive and finite");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  PowerFit f;
  f.x_lo = *std::min_element(x.begin(), x.end());
  f.x_hi = *std::max_element(x.begin(), x.end());
  if (f.x_hi / f.x_lo < min_span * (1.0 - 1e-12)) throw FitError("fit_power_law: x span below the required range");
  double b;
  line_fit(lx, ly, f.exponent, b);
  f.constant = std::exp(b);
  for (size_t i = 0; i < lx.size(); ++i) f.residual = std::max(f.residual, std::abs(ly[i] - (b + f.exponent * lx[i])));
  return f;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double s, b;
  line_fit(lx, ly, s, b);
  return s;
}

std::string to_string(CheckKind k) {
  switch (k) {
    case CheckKind::exponent:
      return "exponent";
    case CheckKind::ratio:
      return "ratio";
    case CheckKind::value:
      return "value";
  }
  return "?";
}

std::string to_string(Bound b) {
  switch (b) {
    case Bound::two_sided:
      return "two_sided";
    case Bound::at_least:
      return "at_least";
    case Bound::at_most:
      return "at_most";
  }
  return "?";
}

void DecayFitReport::evaluate() {
  bool ok = std::isfinite(fitted);
  switch (bound) {
    case Bound::two_sided:
      ok = ok && std::abs(fitted - target) <= tolerance;
      break;
    case Bound::at_least:
      ok = ok && fitted >= target;
      break;
    case Bound::at_most:
      ok = ok && fitted <= target;
      break;
  }
  if (kind == CheckKind::exponent) ok = ok && residual <= residual_cap;
  pass = ok;
}

DecayFitReport exponent_report(const std::string& id, const std::string& name, const std::string& variable,
                               const std::vector<double>& x, const std::vector<double>& y, double target,
                               double tolerance, Bound bound, double min_span) {
  DecayFitReport r;
  r.estimate_id = id;
  r.name = name;
  r.variable = variable;
  r.kind = CheckKind::exponent;
  r.bound = bound;
  r.target = target;
  r.tolerance = tolerance;
  r.xs = x;
  r.ys = y;
  try {
    PowerFit f = fit_power_law(x, y, min_span);
    r.fitted = f.exponent;
    r.constant = f.constant;
    r.residual = f.residual;
    r.window_lo = f.x_lo;
    r.window_hi = f.x_hi;
  } catch (const FitError& e) {
    r.fitted = std::numeric_limits<double>::quiet_NaN();
    r.note = e.what();
  }
  r.evaluate();
  return r;
}

double spread(const std::vector<double>& y) {
  if (y.empty()) return std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double v : y) {
    if (!(v > 0.0) || !std::isfinite(v)) return std::numeric_limits<double>::infinity();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi / lo;
}

DecayFitReport ratio_report(const std::string& id, const std::string& name, const std::string& variable,
                            const std::vector<double>& x, const std::vector<double>& y, double cap) {
  DecayFitReport r;
  r.estimate_id = id;
  r.name = name;
  r.variable = variable;
  r.kind = CheckKind::ratio;
  r.bound = Bound::at_most;
  r.target = cap;
  r.xs = x;
  r.ys = y;
  r.fitted = spread(y);
  if (!x.empty()) {
    r.window_lo = *std::min_element(x.begin(), x.end());
    r.window_hi = *std::max_element(x.begin(), x.end());
  }
  r.evaluate();
  return r;
}

DecayFitReport value_report(const std::string& id, const std::string& name, double value, double target, Bound bound,
                            double tolerance) {
  DecayFitReport r;
  r.estimate_id = id;
  r.name = name;
  r.variable = "none";
  r.kind = CheckKind::value;
  r.bound = bound;
  r.target = target;
  r.tolerance = tolerance;
  r.fitted = value;
  r.evaluate();
  return r;
}

}  // namespace wavelab

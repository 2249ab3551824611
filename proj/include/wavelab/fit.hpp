#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wavelab {

struct FitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PowerFit {
  double exponent = 0.0;
  double constant = 0.0;
  double residual = 0.0;  // max |log y - fit| in natural-log units
  double x_lo = 0.0, x_hi = 0.0;
};

// Least squares on (log x, log y). Needs >= 4 samples and x_hi/x_lo >= min_span.
PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, double min_span = 10.0);
// Plain log-log slope, no sample-count or span requirement (>= 2 points).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

enum class CheckKind { exponent, ratio, value };
// two_sided: |fitted - target| <= tolerance; at_least: fitted >= target; at_most: fitted <= target.
enum class Bound { two_sided, at_least, at_most };

std::string to_string(CheckKind k);
std::string to_string(Bound b);

// One line of an estimate report: a fitted exponent, a max/min ratio or a
// plain measured value compared against a threshold.
struct DecayFitReport {
  std::string estimate_id;
  std::string name;
  std::string variable;  // t, h, lambda, theta, gap, sigma, none
  CheckKind kind = CheckKind::exponent;
  Bound bound = Bound::two_sided;
  double target = 0.0;
  double tolerance = 0.0;
  double fitted = 0.0;
  double constant = 0.0;
  double residual = 0.0;
  double residual_cap = 0.35;
  double window_lo = 0.0, window_hi = 0.0;
  std::vector<double> xs, ys;
  std::string note;
  bool pass = false;

  // Recomputes `pass` from the stored numbers.
  void evaluate();
};

DecayFitReport exponent_report(const std::string& id, const std::string& name, const std::string& variable,
                               const std::vector<double>& x, const std::vector<double>& y, double target,
                               double tolerance, Bound bound = Bound::two_sided, double min_span = 10.0);
// max(y)/min(y) <= cap
DecayFitReport ratio_report(const std::string& id, const std::string& name, const std::string& variable,
                            const std::vector<double>& x, const std::vector<double>& y, double cap);
DecayFitReport value_report(const std::string& id, const std::string& name, double value, double target,
                            Bound bound, double tolerance = 0.0);

// max/min over positive entries; infinity if any entry is zero or not finite.
double spread(const std::vector<double>& y);

}  // namespace wavelab

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace wavelab {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre rule with `points` nodes on [a, b].
// Supported orders: 4, 6, 8, 10, 12, 16, 20, 24, 32, 40, 48, 64.
QuadRule gauss_legendre(int points, double a, double b);

// Composite Gauss-Legendre with `panels` equal panels.
QuadRule composite_gauss(int panels, int points, double a, double b);

// Composite Simpson on an even number of intervals.
QuadRule simpson(int intervals, double a, double b);

}  // namespace wavelab

#pragma once

#include "wavelab/jet.hpp"

#include <limits>
#include <string>

namespace wavelab {

enum class ProfileKind {
  bump,                // exp(-1/((s-a_lo)(a_hi-s))) on (a_lo, a_hi)
  plateau,             // smoothed indicator, 1 on [2 a_lo, a_hi/2], 0 outside (a_lo, a_hi)
  plateau_derivative,  // d/ds of the plateau
};

// A frequency profile times an optional tilt s^q. If a_hi is infinite the
// plateau is the step cutoff chi_a with a = a_lo.
struct BumpProfile {
  double a_lo = 1.0;
  double a_hi = 2.0;
  ProfileKind kind = ProfileKind::bump;
  double q = 0.0;

  static BumpProfile bump(double a_lo, double a_hi);
  static BumpProfile plateau(double a_lo, double a_hi);
  static BumpProfile step(double a);
  static BumpProfile step_derivative(double a);

  BumpProfile tilted(double power) const;

  void validate() const;
  bool compact() const { return a_hi < std::numeric_limits<double>::infinity(); }
  // Closed support; for plateau_derivative pieces it is [a_lo, 2 a_lo] U [a_hi/2, a_hi].
  double support_lo() const { return a_lo; }
  double support_hi() const { return a_hi; }

  double operator()(double s) const;
  // Taylor jet at s of the given order.
  Jet jet(double s, int order) const;
  // Jet composed with an input jet (chain rule through the closed form).
  Jet apply(const Jet& s) const;

  std::string describe() const;
};

ProfileKind parse_profile_kind(const std::string& name);
std::string to_string(ProfileKind k);

// phi_1 = 1 on [a_lo, a_hi] of phi; the plateau on [a_lo/2, 2 a_hi].
BumpProfile plateau_cover(const BumpProfile& phi);

}  // namespace wavelab

#pragma once

#include "wavelab/specfun.hpp"

namespace wavelab::detail {

// J_nu(z) and H^+_nu(z) for complex z in the closed upper half plane, nu integer
// or half-integer, nu <= 4.
struct BesselPair {
  cplx j;
  cplx h_plus;
};

BesselPair complex_bessel(double nu, cplx z);

}  // namespace wavelab::detail

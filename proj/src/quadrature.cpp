#include "wavelab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <string>

namespace wavelab {

namespace {

template <unsigned N>
QuadRule reference_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& xa = G::abscissa();
  const auto& wa = G::weights();
  QuadRule r;
  // Boost stores the non-negative half.
  for (std::size_t i = xa.size(); i-- > 0;) {
    if (xa[i] == 0.0) continue;
    r.x.push_back(-xa[i]);
    r.w.push_back(wa[i]);
  }
  for (std::size_t i = 0; i < xa.size(); ++i) {
    r.x.push_back(xa[i]);
    r.w.push_back(wa[i]);
  }
  return r;
}

const QuadRule& cached(int points) {
  static const QuadRule r4 = reference_rule<4>(), r6 = reference_rule<6>(), r8 = reference_rule<8>(),
                        r10 = reference_rule<10>(), r12 = reference_rule<12>(), r16 = reference_rule<16>(),
                        r20 = reference_rule<20>(), r24 = reference_rule<24>(), r32 = reference_rule<32>(),
                        r40 = reference_rule<40>(), r48 = reference_rule<48>(), r64 = reference_rule<64>();
  switch (points) {
    case 4: return r4;
    case 6: return r6;
    case 8: return r8;
    case 10: return r10;
    case 12: return r12;
    case 16: return r16;
    case 20: return r20;
    case 24: return r24;
    case 32: return r32;
    case 40: return r40;
    case 48: return r48;
    case 64: return r64;
    default: throw QuadratureError("gauss_legendre: unsupported order " + std::to_string(points));
  }
}

}  // namespace

QuadRule gauss_legendre(int points, double a, double b) {
  const QuadRule& ref = cached(points);
  QuadRule r;
  double m = 0.5 * (a + b), h = 0.5 * (b - a);
  r.x.reserve(ref.x.size());
  r.w.reserve(ref.x.size());
  for (std::size_t i = 0; i < ref.x.size(); ++i) {
    r.x.push_back(m + h * ref.x[i]);
    r.w.push_back(h * ref.w[i]);
  }
  return r;
}

QuadRule composite_gauss(int panels, int points, double a, double b) {
  if (panels < 1) throw QuadratureError("composite_gauss: need at least one panel");
  const QuadRule& ref = cached(points);
  QuadRule r;
  r.x.reserve(panels * ref.x.size());
  r.w.reserve(panels * ref.x.size());
  double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double m = a + (p + 0.5) * width, h = 0.5 * width;
    for (std::size_t i = 0; i < ref.x.size(); ++i) {
      r.x.push_back(m + h * ref.x[i]);
      r.w.push_back(h * ref.w[i]);
    }
  }
  return r;
}

QuadRule simpson(int intervals, double a, double b) {
  if (intervals < 2 || intervals % 2) throw QuadratureError("simpson: need an even number of intervals");
  QuadRule r;
  double h = (b - a) / intervals;
  for (int i = 0; i <= intervals; ++i) {
    r.x.push_back(a + i * h);
    double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    r.w.push_back(c * h / 3.0);
  }
  return r;
}

}  // namespace wavelab

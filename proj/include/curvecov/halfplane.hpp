#ifndef CURVECOV_HALFPLANE_HPP
#define CURVECOV_HALFPLANE_HPP

/// \brief Upper half-plane utilities: moduli (marked flat structures on the
/// torus, encoded as points x + iy with y > 0), orientation-preserving real
/// Moebius maps, and the hyperbolic metric.

#include <cmath>
#include <stdexcept>

#include "curvecov/slope.hpp"

namespace curvecov {

/// Absolute tolerance for all derived real quantities.
inline constexpr double kRealTol = 1e-9;

/// A point x + iy of the upper half-plane.
struct Modulus {
  double x;
  double y;

  Modulus(double xx, double yy) : x(xx), y(yy) {
    if (!(y > 0.0))
      throw std::invalid_argument("Modulus: requires y > 0");
  }
};

/// Real fractional-linear map X -> (aX + b)/(cX + d) with positive
/// determinant, hence an isometry of the upper half-plane.
struct MobiusMap {
  double a, b, c, d;

  MobiusMap(double aa, double bb, double cc, double dd)
      : a(aa), b(bb), c(cc), d(dd) {
    if (!(a * d - b * c > 0.0))
      throw std::invalid_argument("MobiusMap: requires positive determinant");
  }

  static MobiusMap identity() { return MobiusMap(1, 0, 0, 1); }

  Modulus operator()(const Modulus& z) const {
    double det = a * d - b * c;
    double u = c * z.x + d;
    double denom = u * u + (c * z.y) * (c * z.y);
    return Modulus(((a * z.x + b) * u + a * c * z.y * z.y) / denom,
                   det * z.y / denom);
  }
};

/// The compatible Moebius action of a determinant +1 coordinate change:
/// cusps move with the slopes (p/q maps to the slope image of p/q).
inline MobiusMap to_mobius(const UnimodularMatrix& m) {
  if (m.det() != 1)
    throw std::invalid_argument(
        "to_mobius: only determinant +1 matrices act on the upper half-plane");
  return MobiusMap(to_double(m.a), to_double(m.b), to_double(m.c),
                   to_double(m.d));
}

/// Hyperbolic distance (curvature -1) between two points.
inline double hyperbolic_distance(const Modulus& z, const Modulus& w) {
  double dx = z.x - w.x, dy = z.y - w.y;
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y));
}

}  // namespace curvecov

#endif  // CURVECOV_HALFPLANE_HPP

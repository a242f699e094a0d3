#ifndef CURVECOV_ANNULAR_HPP
#define CURVECOV_ANNULAR_HPP

/// \brief Annular projections: exact twist coordinates of slopes about an
/// axis curve, the projection distance they induce, and Dehn twists.
///
/// Fixing an axis curve gamma and a unimodular normalizer sending gamma to
/// 1/0, every other slope s projects to the rational p/q where the
/// normalizer sends s to (p, q) with q >= 1. The numerator-over-denominator
/// value is the twist coordinate: it shifts by an integer when the
/// normalizer is composed with a power of the elementary twist, so twist
/// DIFFERENCES about a fixed axis are absolutely well-defined rationals.
/// Projection distance is defined as 1 + ceil(|twist difference|); the
/// ceiling gives deterministic tie-breaking so fitted constants downstream
/// are reproducible.

#include <optional>
#include <stdexcept>

#include "curvecov/farey.hpp"
#include "curvecov/numeric.hpp"
#include "curvecov/slope.hpp"

namespace curvecov {

/// Raised when a projection is requested for a curve equal to the axis
/// (such a curve misses the annulus entirely).
struct ProjectionEmptyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An axis curve together with a determinant +1 normalizer sending it to
/// 1/0. Build with make_axis for the canonical (idempotent) normalizer;
/// hand-built instances are validated on use.
struct AnnularAxis {
  Slope axis;
  UnimodularMatrix normalizer;
};

inline AnnularAxis make_axis(const Slope& axis) {
  return {axis, slope_to_infinity_frame(axis)};
}

namespace detail {

inline void validate_axis(const AnnularAxis& ax) {
  auto [p, q] = ax.normalizer.apply_raw(ax.axis.p, ax.axis.q);
  if (q != 0)
    throw std::invalid_argument(
        "AnnularAxis: normalizer does not send the axis to 1/0");
  (void)p;  // primitivity forces p = +-1 when q = 0
}

}  // namespace detail

/// Twist coordinate of s about the axis: the exact rational p/q with
/// normalizer * s = (p, q), q >= 1. Empty exactly when s equals the axis
/// (the projection-empty case).
inline std::optional<Rat> twist_coord(const AnnularAxis& ax, const Slope& s) {
  detail::validate_axis(ax);
  if (s == ax.axis) return std::nullopt;
  auto [p, q] = ax.normalizer.apply_raw(s.p, s.q);
  if (q < 0) {
    p = -p;
    q = -q;
  }
  return Rat(p, q);
}

/// Projection distance about the axis: 1 + ceil(|twist(a) - twist(b)|).
/// Equal projections give 1 (not 0). Throws ProjectionEmptyError when
/// either curve equals the axis.
inline Int annular_distance(const AnnularAxis& ax, const Slope& a,
                            const Slope& b) {
  auto ta = twist_coord(ax, a);
  auto tb = twist_coord(ax, b);
  if (!ta || !tb)
    throw ProjectionEmptyError(
        "annular_distance: curve equals the axis (empty projection)");
  return 1 + rat_ceil(abs_rat(*ta - *tb));
}

/// n-th power of the Dehn twist about the axis, as the conjugate of the
/// elementary twist [[1, n], [0, 1]] by the normalizer. Shifts the twist
/// coordinate by exactly n: twist(result) = twist(s) + n.
inline Slope dehn_twist(const AnnularAxis& ax, const Int& n, const Slope& s) {
  detail::validate_axis(ax);
  UnimodularMatrix elementary(1, n, 0, 1);
  UnimodularMatrix m =
      ax.normalizer.inverse().mul(elementary).mul(ax.normalizer);
  return apply_unimodular(m, s);
}

}  // namespace curvecov

#endif  // CURVECOV_ANNULAR_HPP

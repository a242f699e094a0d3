#ifndef CURVECOV_TEICH_HPP
#define CURVECOV_TEICH_HPP

/// \brief Upper half-plane engine for unit-area flat tori: flat lengths of
/// slopes, systoles with realizers, geodesic segments between the cusps of
/// two curves (truncated where the endpoint curves reach the bounded-length
/// constant), thin-interval extraction in closed form, the thick part, and
/// shadows (systole realizers along a geodesic).
///
/// Geodesics are handled in the frame that sends the first curve to 1/0:
/// there the geodesic is the vertical line over P/Q (the image of the
/// second curve) and hyperbolic arclength is t = -ln y, increasing from the
/// first curve's cusp toward the second's. The condition "flat length of
/// curve (p', q') is below eps on the line" is a single quadratic in y, so
/// every thin window has closed-form endpoints. Candidate short curves come
/// from the triangle-strip enumeration with intersection product below
/// eps^2 * i(a,b) / 2 (short anywhere on the line forces exactly this
/// bound); a systole sweep at fixed resolution re-certifies completeness on
/// every call.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvecov/farey.hpp"
#include "curvecov/halfplane.hpp"
#include "curvecov/numeric.hpp"
#include "curvecov/slope.hpp"

namespace curvecov {

/// Largest possible systole of a unit-area flat torus, attained at the
/// hexagonal modulus; used as the bounded-length constant for truncation.
inline const double kBoundedLength = std::sqrt(2.0 / std::sqrt(3.0));

/// Sampling resolution of the completeness sweep in thin_intervals.
inline constexpr double kSweepStep = 0.01;

/// Length of the geodesic representative of s on the unit-area flat torus
/// of modulus X: |q X - p| / sqrt(y).
inline double flat_length(const Modulus& X, const Slope& s) {
  double p = to_double(s.p), q = to_double(s.q);
  return std::hypot(q * X.x - p, q * X.y) / std::sqrt(X.y);
}

struct SystoleResult {
  double value;
  std::vector<Slope> realizers;  // canonically sorted, duplicates removed
};

/// Shortest curve on the torus of modulus X, by Lagrange reduction of the
/// period lattice with exact slope bookkeeping. Returns every slope within
/// the absolute tolerance of the minimum (at most three: a reduced basis
/// and one mediant).
inline SystoleResult systole(const Modulus& X) {
  struct Vec {
    Int p, q;
  };
  auto comps = [&](const Vec& v) {
    return std::pair<double, double>(to_double(v.q) * X.x - to_double(v.p),
                                     to_double(v.q) * X.y);
  };
  auto norm2 = [&](const Vec& v) {
    auto [u, w] = comps(v);
    return u * u + w * w;
  };
  Vec v1{1, 0}, v2{0, 1};
  double n1 = norm2(v1), n2 = norm2(v2);
  for (int iter = 0;; ++iter) {
    if (iter > 5000)
      throw std::invalid_argument("systole: reduction failed to converge");
    if (n2 < n1) {
      std::swap(v1, v2);
      std::swap(n1, n2);
    }
    auto [u1, w1] = comps(v1);
    auto [u2, w2] = comps(v2);
    double ratio = (u1 * u2 + w1 * w2) / n1;
    if (std::abs(ratio) >= 4e18)
      throw std::invalid_argument("systole: modulus too extreme");
    int64_t mu = std::llround(ratio);
    if (mu == 0) break;
    v2.p -= mu * v1.p;
    v2.q -= mu * v1.q;
    double next = norm2(v2);
    if (next >= n2) break;  // floating-point fixed point
    n2 = next;
  }
  Vec sum{v1.p + v2.p, v1.q + v2.q};
  Vec diff{v1.p - v2.p, v1.q - v2.q};
  double best = std::sqrt(std::min(std::min(n1, n2),
                                   std::min(norm2(sum), norm2(diff)))) /
                std::sqrt(X.y);
  SystoleResult out;
  out.value = best;
  for (const Vec& v : {v1, v2, sum, diff}) {
    if (std::sqrt(norm2(v)) / std::sqrt(X.y) <= best + kRealTol)
      out.realizers.emplace_back(v.p, v.q);
  }
  std::sort(out.realizers.begin(), out.realizers.end());
  out.realizers.erase(std::unique(out.realizers.begin(), out.realizers.end()),
                      out.realizers.end());
  return out;
}

/// A truncated hyperbolic geodesic whose ideal endpoints are the cusps of
/// two curves. Arclength t runs from the first curve's end toward the
/// second's; at(t) maps back to the original coordinates.
struct GeodesicSegment {
  Slope a, b;
  UnimodularMatrix frame;  // sends a to 1/0; below, b means (P, Q)
  Int P, Q;                // frame image of b, Q >= 1
  double t_lo, t_hi;
  MobiusMap to_original;   // inverse frame as a point map

  double length() const { return t_hi - t_lo; }

  /// Point at arclength parameter t, in original coordinates. The rounding
  /// of P/Q to a double displaces the point off the geodesic by a
  /// hyperbolic distance of order e^t ulp(P/Q); exact questions about the
  /// line (thin windows) are answered in closed form instead.
  Modulus at(double t) const {
    return to_original(Modulus(to_double(Rat(P, Q)), std::exp(-t)));
  }
};

namespace detail {

inline GeodesicSegment segment_shell(const Slope& a, const Slope& b) {
  if (a == b)
    throw std::invalid_argument(
        "geodesic_between: equal curves give a degenerate geodesic");
  UnimodularMatrix frame = slope_to_infinity_frame(a);
  auto [P, Q] = frame.apply_raw(b.p, b.q);
  if (Q < 0) {
    P = -P;
    Q = -Q;
  }
  return {a,      b, frame, P, Q, 0.0, 0.0,
          to_mobius(frame.inverse())};
}

}  // namespace detail

/// The geodesic from a's cusp to b's, truncated at the two times where the
/// respective curve's flat length rises to the bounded-length constant.
inline GeodesicSegment geodesic_between(const Slope& a, const Slope& b) {
  GeodesicSegment g = detail::segment_shell(a, b);
  double ta = 2.0 * std::log(kBoundedLength);                // a's truncation
  double tb = 2.0 * std::log(to_double(g.Q)) - ta;           // b's truncation
  g.t_lo = std::min(ta, tb);
  g.t_hi = std::max(ta, tb);
  return g;
}

/// Same geodesic with a caller-chosen parameter window.
inline GeodesicSegment make_segment(const Slope& a, const Slope& b,
                                    double t_lo, double t_hi) {
  if (!(t_lo < t_hi))
    throw std::invalid_argument("make_segment: requires t_lo < t_hi");
  GeodesicSegment g = detail::segment_shell(a, b);
  g.t_lo = t_lo;
  g.t_hi = t_hi;
  return g;
}

/// A maximal parameter window where one curve stays shorter than epsilon,
/// clipped to the segment.
struct ThinInterval {
  Slope curve;
  double t_enter, t_exit;
  double epsilon;
};

/// All curves that get epsilon-short along the segment, with closed-form
/// entry and exit times. Completeness is certified on every call by a
/// systole sweep at resolution kSweepStep: realizers proposed by the
/// systole at each sample time are re-measured exactly on the line, and
/// any that are genuinely short there must already lie in a reported
/// window.
inline std::vector<ThinInterval> thin_intervals(const GeodesicSegment& g,
                                                double epsilon) {
  if (!(epsilon > 0.0) || epsilon >= kBoundedLength)
    throw std::invalid_argument(
        "thin_intervals: epsilon must lie in (0, bounded-length constant)");
  Rat eps(epsilon);  // dyadic, hence exact
  Rat eps2 = eps * eps;
  std::vector<ThinInterval> out;
  auto clip_push = [&](const Slope& curve, double enter, double exit) {
    double lo = std::max(enter, g.t_lo);
    double hi = std::min(exit, g.t_hi);
    if (lo < hi) out.push_back({curve, lo, hi, epsilon});
  };
  // candidates: intersection product below eps^2 * i(a,b) / 2 forces every
  // curve that is short anywhere on the full line to appear
  Rat bound = eps2 * Rat(g.Q, 2);
  for (const StripVertex& cand : strip_candidates(g.a, g.b, bound)) {
    if (cand.slope == g.a) {
      // flat length e^{t/2} < eps  <=>  t < 2 ln eps
      clip_push(g.a, -std::numeric_limits<double>::infinity(),
                2.0 * std::log(epsilon));
      continue;
    }
    if (cand.slope == g.b) {
      // flat length Q e^{-t/2} < eps  <=>  t > 2 ln(Q / eps)
      clip_push(g.b, 2.0 * std::log(to_double(g.Q)) - 2.0 * std::log(epsilon),
                std::numeric_limits<double>::infinity());
      continue;
    }
    // in-frame curve (p', q'): length^2 on the line x = P/Q at height y is
    // ((q' P/Q - p')^2 + q'^2 y^2) / y < eps^2, a quadratic in y
    auto [fp, fq] = g.frame.apply_raw(cand.slope.p, cand.slope.q);
    Rat u(Int(fq * g.P - fp * g.Q), g.Q);
    Rat v(fq);
    Rat disc = eps2 * eps2 - 4 * u * u * v * v;
    if (disc <= 0) continue;  // never dips below eps on the line
    double root = std::sqrt(to_double(disc));
    double e2 = to_double(eps2);
    double vv = to_double(Rat(v * v));
    double y_hi = (e2 + root) / (2.0 * vv);
    double y_lo = (e2 - root) / (2.0 * vv);
    clip_push(cand.slope, -std::log(y_hi), -std::log(y_lo));
  }
  std::sort(out.begin(), out.end(), [](const ThinInterval& l,
                                       const ThinInterval& r) {
    if (l.t_enter != r.t_enter) return l.t_enter < r.t_enter;
    return l.curve < r.curve;
  });

  // completeness sweep: the systole of the mapped-back point proposes
  // curves, but that point sits off the geodesic by a few ulps of P/Q,
  // which the cusp magnifies by e^t; each proposal is therefore re-measured
  // on the exact line (u^2 e^t + v^2 e^{-t}, a well-conditioned sum) before
  // it must lie inside a reported window
  double e2 = to_double(eps2);
  int64_t steps =
      std::max<int64_t>(1, static_cast<int64_t>(
                               std::ceil(g.length() / kSweepStep)));
  for (int64_t i = 0; i <= steps; ++i) {
    double t = g.t_lo + (g.length() * static_cast<double>(i)) /
                            static_cast<double>(steps);
    SystoleResult s = systole(g.at(t));
    if (s.value >= epsilon - kRealTol) continue;
    for (const Slope& short_curve : s.realizers) {
      auto [fp, fq] = g.frame.apply_raw(short_curve.p, short_curve.q);
      Rat u(Int(fq * g.P - fp * g.Q), g.Q);
      double u2 = to_double(Rat(u * u));
      double v2 = to_double(Rat(Int(fq) * Int(fq)));
      double line_len2 = u2 * std::exp(t) + v2 * std::exp(-t);
      if (!(line_len2 < e2 * (1.0 - 1e-12))) continue;  // off-line drift only
      bool covered = false;
      for (const ThinInterval& w : out)
        if (w.curve == short_curve && w.t_enter - kRealTol <= t &&
            t <= w.t_exit + kRealTol) {
          covered = true;
          break;
        }
      if (!covered)
        throw std::logic_error(
            "thin_intervals: sweep found a short curve outside every "
            "reported window: " +
            short_curve.str());
    }
  }
  return out;
}

/// The epsilon-thick part of the segment: complement of the thin windows,
/// filtered to pieces of length at least min_len, with the total length.
struct ThickPart {
  std::vector<std::pair<double, double>> intervals;
  double epsilon;
  double min_length;
  double total;
};

inline ThickPart thick_part(const GeodesicSegment& g, double epsilon,
                            double min_len) {
  if (!(min_len > 0.0))
    throw std::invalid_argument("thick_part: min_len must be positive");
  std::vector<ThinInterval> thin = thin_intervals(g, epsilon);
  ThickPart out{{}, epsilon, min_len, 0.0};
  double cursor = g.t_lo;
  auto close_piece = [&](double upto) {
    if (upto - cursor >= min_len - kRealTol) {
      out.intervals.emplace_back(cursor, upto);
      out.total += upto - cursor;
    }
  };
  for (const ThinInterval& w : thin) {
    if (w.t_enter > cursor) close_piece(w.t_enter);
    cursor = std::max(cursor, w.t_exit);
  }
  if (cursor < g.t_hi) close_piece(g.t_hi);
  return out;
}

/// Systole realizer along the segment, sampled every `step`, ties broken by
/// canonical slope order, consecutive repeats merged. Each entry records
/// the first sample time of its run.
inline std::vector<std::pair<double, Slope>> shadow(const GeodesicSegment& g,
                                                    double step) {
  if (!(step > 0.0))
    throw std::invalid_argument("shadow: step must be positive");
  std::vector<std::pair<double, Slope>> out;
  int64_t steps = std::max<int64_t>(
      1, static_cast<int64_t>(std::ceil(g.length() / step)));
  for (int64_t i = 0; i <= steps; ++i) {
    double t = g.t_lo + (g.length() * static_cast<double>(i)) /
                            static_cast<double>(steps);
    Slope realizer = systole(g.at(t)).realizers.front();
    if (out.empty() || !(out.back().second == realizer))
      out.emplace_back(t, realizer);
  }
  return out;
}

}  // namespace curvecov

#endif  // CURVECOV_TEICH_HPP

#ifndef CURVECOV_ANTICHAIN_HPP
#define CURVECOV_ANTICHAIN_HPP

/// \brief Antichains of annuli for a pair of curves: the set J of axes whose
/// annular projection distance reaches a threshold T, the accumulation lower
/// bound d >= |J|, the combined distance estimate report (|J| plus thick
/// length), and the thick-interval counting bound.
///
/// Membership reduces to an intersection-number inequality: the projection
/// distance about gamma is 1 + ceil(i(a,b) / (i(a,gamma) i(b,gamma))), so
/// d >= T exactly when the intersection product is below i(a,b) / (T-2).
/// Candidates therefore come from the triangle-strip enumeration with that
/// product bound, and each one is confirmed by computing its projection
/// distance outright.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvecov/annular.hpp"
#include "curvecov/farey.hpp"
#include "curvecov/halfplane.hpp"
#include "curvecov/numeric.hpp"
#include "curvecov/slope.hpp"
#include "curvecov/teich.hpp"

namespace curvecov {

/// Axes of the annuli where the projections of a fixed pair of curves sit
/// at least threshold_lo apart; complete down to threshold_hi. Built by
/// antichain_of_maxima with both thresholds equal.
struct Antichain {
  std::pair<Slope, Slope> base_pair;
  int64_t threshold_lo = 0;
  int64_t threshold_hi = 0;
  std::vector<Slope> members;  // canonically sorted
};

/// All axes gamma with annular projection distance d_gamma(a, b) >= T.
/// Requires T >= 4; the accumulation argument needs the threshold above 3.
inline Antichain antichain_of_maxima(const Slope& a, const Slope& b,
                                     int64_t T) {
  if (T <= 3)
    throw std::invalid_argument(
        "antichain_of_maxima: threshold too small, the accumulation bound "
        "requires T >= 4");
  Antichain out{{a, b}, T, T, {}};
  if (a == b) return out;
  Int I = abs_int(cross(a, b));
  // d_gamma(a,b) = 1 + ceil(I / product) >= T  <=>  product * (T-2) < I
  Rat bound(I, Int(T - 2));
  for (const StripVertex& cand : strip_candidates(a, b, bound)) {
    if (cand.slope == a || cand.slope == b) continue;
    if (annular_distance(make_axis(cand.slope), a, b) >= T)
      out.members.push_back(cand.slope);
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

/// The accumulation lower bound: the curve-graph distance of the base pair
/// dominates the antichain size. Guaranteed when the antichain was built at
/// threshold >= 5: membership then means a twist gap above 3, which forces
/// the axis onto every geodesic of the pair, so the members line up along
/// one geodesic. At threshold 4 the gap can dip to just above 2, members
/// may avoid geodesics, and the checker can legitimately return false.
inline bool accumulation_bound(const Antichain& ch) {
  return farey_distance(ch.base_pair.first, ch.base_pair.second) >=
         static_cast<int64_t>(ch.members.size());
}

/// One pair's worth of data for the two-sided distance estimate: antichain
/// size, total thick length along the geodesic, and the true distance.
/// fitted_K is populated by the sweep driver that fits a single constant
/// across a sample; it stays 0 for a standalone report.
struct EstimateReport {
  std::pair<Slope, Slope> pair;
  int64_t J_size = 0;
  double gamma_total = 0.0;
  int64_t distance = 0;
  double fitted_K = 0.0;
};

inline EstimateReport distance_estimate(const Slope& a, const Slope& b,
                                        int64_t T, double epsilon,
                                        double min_len) {
  if (a == b)
    throw std::invalid_argument("distance_estimate: degenerate pair");
  Antichain ch = antichain_of_maxima(a, b, T);
  ThickPart tp = thick_part(geodesic_between(a, b), epsilon, min_len);
  return {{a, b}, static_cast<int64_t>(ch.members.size()), tp.total,
          farey_distance(a, b), 0.0};
}

/// Counting bound: the thick part has at most |J| + 1 intervals. This is a
/// theorem only when every curve able to get epsilon-thin is an antichain
/// member, i.e. epsilon^2 <= 2 / (T - 2); a larger epsilon is rejected as a
/// parameter mismatch.
inline bool interval_count_bound(const Antichain& ch, const ThickPart& tp) {
  int64_t T = ch.threshold_hi;
  if (T <= 3)
    throw std::invalid_argument(
        "interval_count_bound: antichain threshold below 4");
  if (tp.epsilon * tp.epsilon >
      2.0 / static_cast<double>(T - 2) + kRealTol)
    throw std::invalid_argument(
        "interval_count_bound: epsilon too large for the antichain "
        "threshold");
  return static_cast<int64_t>(tp.intervals.size()) <=
         static_cast<int64_t>(ch.members.size()) + 1;
}

}  // namespace curvecov

#endif  // CURVECOV_ANTICHAIN_HPP

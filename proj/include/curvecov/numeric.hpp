#ifndef CURVECOV_NUMERIC_HPP
#define CURVECOV_NUMERIC_HPP

/// \brief Exact arithmetic foundation: unbounded integers and rationals,
/// plus the handful of integer helpers (floor/ceil division, floor sqrt,
/// rational ceiling) the rest of the library leans on.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace curvecov {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Floor division for unbounded integers (rounds toward minus infinity).
inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Ceiling division for unbounded integers (rounds toward plus infinity).
inline Int ceil_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("ceil_div: division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

/// Largest integer whose square is at most n (n >= 0).
inline Int floor_sqrt(const Int& n) {
  if (n < 0) throw std::domain_error("floor_sqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

/// Exact ceiling of a rational.
inline Int rat_ceil(const Rat& r) {
  return ceil_div(boost::multiprecision::numerator(r),
                  boost::multiprecision::denominator(r));
}

/// Exact floor of a rational.
inline Int rat_floor(const Rat& r) {
  return floor_div(boost::multiprecision::numerator(r),
                   boost::multiprecision::denominator(r));
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline double to_double(const Int& a) { return a.convert_to<double>(); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace curvecov

#endif  // CURVECOV_NUMERIC_HPP

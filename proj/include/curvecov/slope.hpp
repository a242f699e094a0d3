#ifndef CURVECOV_SLOPE_HPP
#define CURVECOV_SLOPE_HPP

/// \brief Slopes (primitive integer pairs p/q labeling curves), the two
/// Farey-graph surface models, intersection numbers, the edge rule, and
/// the unimodular change-of-coordinates action.

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "curvecov/numeric.hpp"

namespace curvecov {

/// A primitive slope p/q with q >= 0, and p = 1 when q = 0 (the point at
/// infinity). Construction normalizes, so equality is field-wise.
struct Slope {
  Int p{1};
  Int q{0};

  Slope() = default;

  Slope(Int pp, Int qq) {
    if (pp == 0 && qq == 0)
      throw std::invalid_argument("Slope: (0, 0) does not label a curve");
    Int g = boost::multiprecision::gcd(abs_int(pp), abs_int(qq));
    pp /= g;
    qq /= g;
    if (qq < 0 || (qq == 0 && pp < 0)) {
      pp = -pp;
      qq = -qq;
    }
    p = std::move(pp);
    q = std::move(qq);
  }

  bool operator==(const Slope& o) const = default;

  /// Canonical order: by denominator, then numerator. Deterministic for
  /// sorting member lists and report rows.
  std::strong_ordering operator<=>(const Slope& o) const {
    if (q != o.q)
      return q < o.q ? std::strong_ordering::less
                     : std::strong_ordering::greater;
    if (p != o.p)
      return p < o.p ? std::strong_ordering::less
                     : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  bool is_infinity() const { return q == 0; }

  std::string str() const {
    std::ostringstream os;
    os << p << "/" << q;
    return os.str();
  }
};

/// Canonical primitive representative of (p, q); rejects the zero pair.
inline Slope normalize_slope(const Int& p, const Int& q) { return Slope(p, q); }

/// Parses "p/q" (also bare integers "n" as n/1). Throws on malformed input
/// and on the zero pair.
inline Slope parse_slope(std::string_view text) {
  auto bad = [&] {
    return std::invalid_argument("parse_slope: malformed slope '" +
                                 std::string(text) + "'");
  };
  auto numeric = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string s(text);
  auto slash = s.find('/');
  std::string num_s = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den_s = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!numeric(num_s) || !numeric(den_s)) throw bad();
  try {
    return Slope(Int(num_s), Int(den_s));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

inline std::ostream& operator<<(std::ostream& os, const Slope& s) {
  return os << s.p << "/" << s.q;
}

/// Signed determinant p_a q_b - q_a p_b; its absolute value is the torus
/// geometric intersection number.
inline Int cross(const Slope& a, const Slope& b) {
  return a.p * b.q - a.q * b.p;
}

enum class SurfaceModel { TorusFarey, SphereOrbifold2222, Annulus };

inline std::string to_string(SurfaceModel m) {
  switch (m) {
    case SurfaceModel::TorusFarey: return "torus";
    case SurfaceModel::SphereOrbifold2222: return "pillowcase";
    case SurfaceModel::Annulus: return "annulus";
  }
  return "?";
}

/// Geometric intersection number of two slopes: |det| on the torus, twice
/// that on the four-cone-point sphere (each torus crossing double-covers).
inline Int intersection_number(SurfaceModel model, const Slope& a,
                               const Slope& b) {
  if (model == SurfaceModel::Annulus)
    throw std::invalid_argument(
        "intersection_number: annulus model has no slope intersections");
  Int i = abs_int(cross(a, b));
  return model == SurfaceModel::SphereOrbifold2222 ? Int(2 * i) : i;
}

/// Edge rule shared by both slope models: |det| = 1 (minimal intersection,
/// which is 1 on the torus and 2 on the orbifold).
inline bool is_edge(SurfaceModel model, const Slope& a, const Slope& b) {
  if (model == SurfaceModel::Annulus)
    throw std::invalid_argument("is_edge: annulus model has no slope edges");
  if (a == b) throw std::invalid_argument("is_edge: degenerate pair a = b");
  return abs_int(cross(a, b)) == 1;
}

/// Integer matrix [[a,b],[c,d]] with determinant +-1 acting on slopes by
/// (p, q) |-> (a p + b q, c p + d q) followed by normalization.
struct UnimodularMatrix {
  Int a{1}, b{0}, c{0}, d{1};

  UnimodularMatrix() = default;

  UnimodularMatrix(Int aa, Int bb, Int cc, Int dd)
      : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)), d(std::move(dd)) {
    if (det() != 1 && det() != -1)
      throw std::invalid_argument("UnimodularMatrix: determinant must be +-1");
  }

  Int det() const { return a * d - b * c; }

  bool operator==(const UnimodularMatrix&) const = default;

  /// Raw linear action, no normalization.
  std::pair<Int, Int> apply_raw(const Int& p, const Int& q) const {
    return {a * p + b * q, c * p + d * q};
  }

  UnimodularMatrix mul(const UnimodularMatrix& o) const {
    return UnimodularMatrix(a * o.a + b * o.c, a * o.b + b * o.d,
                            c * o.a + d * o.c, c * o.b + d * o.d);
  }

  UnimodularMatrix inverse() const {
    // adjugate / det with det = +-1.
    if (det() == 1) return UnimodularMatrix(d, -b, -c, a);
    return UnimodularMatrix(-d, b, c, -a);
  }
};

inline Slope apply_unimodular(const UnimodularMatrix& m, const Slope& s) {
  auto [p, q] = m.apply_raw(s.p, s.q);
  return Slope(p, q);
}

}  // namespace curvecov

template <>
struct std::hash<curvecov::Slope> {
  size_t operator()(const curvecov::Slope& s) const {
    std::hash<std::string> h;
    return h(s.str());
  }
};

#endif  // CURVECOV_SLOPE_HPP

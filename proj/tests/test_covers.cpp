#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "curvecov/covers.hpp"
#include "curvecov/farey.hpp"
#include "curvecov/halfplane.hpp"
#include "curvecov/slope.hpp"

using namespace curvecov;

namespace {

Slope random_slope(std::mt19937_64& rng, int64_t size) {
  std::uniform_int_distribution<int64_t> pick(-size, size);
  while (true) {
    int64_t p = pick(rng), q = pick(rng);
    if (p == 0 && q == 0) continue;
    return Slope(p, q);
  }
}

// all covers of the given degree, enumerated directly in normal form
std::vector<LatticeCover> covers_of_degree(int64_t degree) {
  std::vector<LatticeCover> out;
  for (int64_t m22 = 1; m22 <= degree; ++m22) {
    if (degree % m22 != 0) continue;
    int64_t m11 = degree / m22;
    for (int64_t m21 = 0; m21 < m22; ++m21)
      out.push_back(make_cover(m11, m21, 0, m22));
  }
  return out;
}

// membership test straight from the normal form: (a, b) lies in the lattice
// iff a is a multiple of m11 and the remainder of b is a multiple of m22
bool in_lattice(const LatticeCover& cov, const Int& a, const Int& b) {
  if (a % cov.m11 != 0) return false;
  return (b - (a / cov.m11) * cov.m21) % cov.m22 == 0;
}

// unit-area flat torus length, written out independently of the library
double flat_len(double x, double y, const Slope& s) {
  double p = to_double(s.p), q = to_double(s.q);
  return std::hypot(q * x - p, q * y) / std::sqrt(y);
}

}  // namespace

TEST_CASE("basis canonicalization is lattice-invariant") {
  // pinned: diagonal bases are already canonical
  LatticeCover two = make_cover(2, 0, 0, 1);
  CHECK(two.m11 == 2);
  CHECK(two.m21 == 0);
  CHECK(two.m12 == 0);
  CHECK(two.m22 == 1);
  CHECK(two.degree == 2);
  CHECK(make_cover(0, 1, 2, 0) == two);   // swapped columns, same lattice
  CHECK(make_cover(-2, 0, 0, 1) == two);  // orientation corrected
  CHECK(make_cover(2, 0, 2, 1) == two);   // sheared second column

  CHECK_THROWS_AS(make_cover(2, 1, 4, 2), std::invalid_argument);  // singular

  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int64_t> pick(-9, 9);
  std::uniform_int_distribution<int64_t> shear(-6, 6);
  int done = 0;
  while (done < 200) {
    Int a = pick(rng), c = pick(rng), b = pick(rng), d = pick(rng);
    if (a * d - c * b == 0) continue;
    LatticeCover cov = make_cover(a, c, b, d);
    CHECK(cov.degree == abs_int(a * d - c * b));
    CHECK(cov.m12 == 0);
    CHECK(cov.m11 > 0);
    CHECK(cov.m22 > 0);
    CHECK(cov.m21 >= 0);
    CHECK(cov.m21 < cov.m22);
    // right-multiplying by a unimodular matrix keeps the lattice, so the
    // canonical form must not move
    Int k = shear(rng);
    CHECK(make_cover(a, c, b + k * a, d + k * c) == cov);
    CHECK(make_cover(b, d, a, c) == cov);
    CHECK(make_cover(-a, -c, b, d) == cov);
    ++done;
  }
}

TEST_CASE("cover serialization round-trips") {
  for (const auto& cov :
       {make_cover(2, 0, 0, 1), make_cover(3, 2, 0, 4), make_cover(1, 0, 0, 1),
        make_cover(5, 3, 7, 11)}) {
    CHECK(parse_cover(cov.str()) == cov);
  }
  CHECK(parse_cover(" [[2, 0], [0, 1]] ") == make_cover(2, 0, 0, 1));
  CHECK_THROWS_AS(parse_cover("[[2,0],[0]]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("[[2,0],[0,]]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("2,0,0,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("[[2,0],[4,0]]"), std::invalid_argument);
}

TEST_CASE("lift pinned examples") {
  LatticeCover cov = make_cover(2, 0, 0, 1);  // index-2 horizontal stretch
  LiftResult r = lift_curve(cov, Slope(1, 0));
  CHECK(r.lifted == Slope(1, 0));
  CHECK(r.wrap == 2);
  CHECK(r.components == 1);

  r = lift_curve(cov, Slope(0, 1));
  CHECK(r.lifted == Slope(0, 1));
  CHECK(r.wrap == 1);
  CHECK(r.components == 2);

  r = lift_curve(cov, Slope(1, 1));
  CHECK(r.lifted == Slope(1, 2));
  CHECK(r.wrap == 2);
  CHECK(r.components == 1);
}

TEST_CASE("project pinned examples") {
  LatticeCover cov = make_cover(2, 0, 0, 1);
  auto [s1, m1] = project_curve(cov, Slope(1, 2));
  CHECK(s1 == Slope(1, 1));
  CHECK(m1 == 2);
  auto [s2, m2] = project_curve(cov, Slope(0, 1));
  CHECK(s2 == Slope(0, 1));
  CHECK(m2 == 1);
  auto [s3, m3] = project_curve(identity_cover(), Slope(3, 7));
  CHECK(s3 == Slope(3, 7));
  CHECK(m3 == 1);
}

TEST_CASE("lift and project round-trip with exact degree bookkeeping") {
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<int64_t> pick(-7, 7);
  int done = 0;
  while (done < 300) {
    Int a = pick(rng), c = pick(rng), b = pick(rng), d = pick(rng);
    Int det = a * d - c * b;
    if (det == 0 || abs_int(det) > 12) continue;
    LatticeCover cov = make_cover(a, c, b, d);
    Slope s = random_slope(rng, 40);
    LiftResult r = lift_curve(cov, s);
    CHECK(r.wrap >= 1);
    CHECK(r.components >= 1);
    CHECK(r.wrap * r.components == cov.degree);
    CHECK(cov.degree % r.wrap == 0);
    // the lifted slope projects back to s, covering it wrap times
    auto [down, mult] = project_curve(cov, r.lifted);
    CHECK(down == s);
    CHECK(mult == r.wrap);
    // wrap is genuinely minimal: no smaller multiple of s lies in the lattice
    for (Int k = 1; k < r.wrap; ++k)
      CHECK(!in_lattice(cov, k * s.p, k * s.q));
    CHECK(in_lattice(cov, r.wrap * s.p, r.wrap * s.q));
    CHECK(is_symmetric(cov, r.lifted));
    ++done;
  }
}

TEST_CASE("symmetry check and orbifold lift") {
  CHECK(is_symmetric(make_cover(2, 0, 0, 1), Slope(1, 2)));
  CHECK(is_symmetric(make_cover(3, 0, 1, 1), Slope(1, 0)));
  CHECK(is_symmetric(identity_cover(), Slope(22, 7)));
  CHECK(orbifold_lift(Slope(0, 1)) == Slope(0, 1));
  CHECK(orbifold_lift(Slope(1, 0)) == Slope(1, 0));
  CHECK(orbifold_lift(Slope(5, 26)) == Slope(5, 26));
  CHECK(OrbifoldDoubleCover::degree == 2);
}

TEST_CASE("intersection numbers of lifted curves obey the wrap formula") {
  // Disjoint curves (equal slopes here) trivially lift to disjoint lifts.
  // For crossing curves the exact rule, checked exhaustively over every
  // cover of degree at most 6 and every Farey edge with |p|, q <= 13, is
  //   i(lift a, lift b) = i(a, b) * wrap_a * wrap_b / degree,
  // so an edge lifts to an edge precisely when wrap_a * wrap_b = degree
  // (and can lift to a non-edge: [[2,0],[0,1]] sends the edge 1/0 -- 1/1
  // to 1/0 -- 1/2 with two crossings).
  std::vector<Slope> box;
  box.emplace_back(1, 0);
  for (int64_t q = 1; q <= 13; ++q)
    for (int64_t p = -13; p <= 13; ++p)
      if (boost::multiprecision::gcd(Int(p < 0 ? -p : p), Int(q)) == 1)
        box.emplace_back(p, q);

  std::vector<LatticeCover> covers;
  for (int64_t deg = 1; deg <= 6; ++deg)
    for (const auto& cov : covers_of_degree(deg)) covers.push_back(cov);
  REQUIRE(covers.size() == 33);

  LatticeCover stretch = make_cover(2, 0, 0, 1);
  CHECK(abs_int(cross(lift_curve(stretch, Slope(1, 0)).lifted,
                      lift_curve(stretch, Slope(1, 1)).lifted)) == 2);

  int64_t edges = 0;
  for (size_t i = 0; i < box.size(); ++i)
    for (size_t j = i + 1; j < box.size(); ++j) {
      if (abs_int(cross(box[i], box[j])) != 1) continue;
      ++edges;
      for (const auto& cov : covers) {
        LiftResult la = lift_curve(cov, box[i]);
        LiftResult lb = lift_curve(cov, box[j]);
        Int up = abs_int(cross(la.lifted, lb.lifted));
        if (up * cov.degree != la.wrap * lb.wrap) {
          CAPTURE(cov.str(), box[i].str(), box[j].str());
          REQUIRE(up * cov.degree == la.wrap * lb.wrap);
        }
        bool edge_up = la.lifted == lb.lifted ||
                       is_edge(SurfaceModel::TorusFarey, la.lifted, lb.lifted);
        CHECK(edge_up == (la.wrap * lb.wrap == cov.degree));
      }
    }
  CHECK(edges == 461);  // the sweep covered every edge in the 13-box
}

TEST_CASE("lifting expands distances by at most the logarithmic factor") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int64_t> pick(-7, 7);
  int done = 0;
  while (done < 150) {
    Int a = pick(rng), c = pick(rng), b = pick(rng), d = pick(rng);
    Int det = a * d - c * b;
    if (det == 0 || abs_int(det) > 6) continue;
    LatticeCover cov = make_cover(a, c, b, d);
    Slope s = random_slope(rng, 60), t = random_slope(rng, 60);
    double bound = (2.0 * std::log2(2.0 * to_double(cov.degree)) + 2.0) *
                   static_cast<double>(farey_distance(s, t));
    double lifted = static_cast<double>(
        farey_distance(lift_curve(cov, s).lifted, lift_curve(cov, t).lifted));
    CHECK(lifted <= bound + kRealTol);
    ++done;
  }
}

TEST_CASE("modulus map pinned examples") {
  MobiusMap half = cover_modulus_map(make_cover(2, 0, 0, 1));
  Modulus img = half(Modulus(0, 2));
  CHECK(img.x == Catch::Approx(0.0).margin(kRealTol));
  CHECK(img.y == Catch::Approx(1.0).margin(kRealTol));  // 2i -> i

  MobiusMap ident = cover_modulus_map(identity_cover());
  Modulus z = ident(Modulus(0.3, 0.8));
  CHECK(z.x == Catch::Approx(0.3).margin(kRealTol));
  CHECK(z.y == Catch::Approx(0.8).margin(kRealTol));

  MobiusMap dbl = cover_modulus_map(make_cover(1, 0, 0, 2));
  Modulus w = dbl(Modulus(0.5, 1.5));
  CHECK(w.x == Catch::Approx(1.0).margin(kRealTol));
  CHECK(w.y == Catch::Approx(3.0).margin(kRealTol));
}

TEST_CASE("modulus map is a hyperbolic isometry") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> uy(0.1, 5.0);
  std::uniform_int_distribution<int64_t> pick(-7, 7);
  int done = 0;
  while (done < 200) {
    Int a = pick(rng), c = pick(rng), b = pick(rng), d = pick(rng);
    Int det = a * d - c * b;
    if (det == 0 || abs_int(det) > 12) continue;
    MobiusMap phi = cover_modulus_map(make_cover(a, c, b, d));
    Modulus X(ux(rng), uy(rng)), Y(ux(rng), uy(rng));
    CHECK(std::abs(hyperbolic_distance(X, Y) -
                   hyperbolic_distance(phi(X), phi(Y))) < kRealTol);
    ++done;
  }
}

TEST_CASE("lifted curves have the predicted flat length upstairs") {
  // one component wrapping k times has length k * |base vector| on the
  // cover lattice; after unit-area rescaling this reads
  // flat_length(phi(X), lifted) = (wrap / sqrt(degree)) * flat_length(X, s)
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  std::uniform_real_distribution<double> uy(0.2, 4.0);
  std::uniform_int_distribution<int64_t> pick(-6, 6);
  int done = 0;
  while (done < 200) {
    Int a = pick(rng), c = pick(rng), b = pick(rng), d = pick(rng);
    if (a * d - c * b == 0) continue;
    LatticeCover cov = make_cover(a, c, b, d);
    Slope s = random_slope(rng, 25);
    LiftResult r = lift_curve(cov, s);
    Modulus X(ux(rng), uy(rng));
    Modulus up = cover_modulus_map(cov)(X);
    double expected = to_double(r.wrap) / std::sqrt(to_double(cov.degree)) *
                      flat_len(X.x, X.y, s);
    CHECK(flat_len(up.x, up.y, r.lifted) ==
          Catch::Approx(expected).margin(1e-9).epsilon(1e-9));
    ++done;
  }
}

TEST_CASE("annulus cover intersection bound") {
  CHECK(annulus_cover_distance(3, 12) == Rat(4));
  CHECK(annulus_cover_distance(1, 7) == Rat(7));
  CHECK(annulus_cover_distance(5, 0) == Rat(0));
  CHECK(annulus_cover_distance(4, 10) == Rat(5, 2));
  CHECK_THROWS_AS(annulus_cover_distance(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(annulus_cover_distance(3, -1), std::invalid_argument);
  // rounding the bound up never drops below the exact ratio
  for (Int d = 1; d <= 20; ++d)
    for (Int i = 0; i <= 50; ++i)
      CHECK(Rat(ceil_div(i, d)) >= annulus_cover_distance(d, i));
}

#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "curvecov/farey.hpp"
#include "curvecov/graph.hpp"

using namespace curvecov;

namespace {

std::vector<Slope> slopes_in_box(int64_t bound) {
  std::vector<Slope> out;
  out.emplace_back(1, 0);
  for (int64_t q = 1; q <= bound; ++q)
    for (int64_t p = -bound; p <= bound; ++p)
      if (boost::multiprecision::gcd(Int(p < 0 ? -p : p), Int(q)) == 1)
        out.emplace_back(p, q);
  return out;
}

}  // namespace

TEST_CASE("farey_distance on pinned pairs") {
  CHECK(farey_distance(Slope(0, 1), Slope(1, 0)) == 1);
  CHECK(farey_distance(Slope(1, 0), Slope(1, 2)) == 2);
  CHECK(farey_distance(Slope(1, 0), Slope(2, 5)) == 3);
  CHECK(farey_distance(Slope(0, 1), Slope(5, 26)) == 2);
  CHECK(farey_distance(Slope(5, 26), Slope(5, 26)) == 0);
  CHECK(farey_distance(Slope(1, 5), Slope(5, 26)) == 1);
}

TEST_CASE("farey_distance handles giant twist powers exactly") {
  // b = image of 0/1 under the 10^30-th power of the twist about 1/0:
  // the pair (0/1, n/1) is at distance 2 through 1/0 for |n| >= 2.
  Int n("1000000000000000000000000000000");
  CHECK(farey_distance(Slope(0, 1), Slope(n, 1)) == 2);
  // continued fraction [0; 3, N, 3] with astronomical middle quotient:
  // value = (3N + 1)/(9N + 6)
  Int N("981234567890123456789012345678901234567");
  Slope big(3 * N + 1, 9 * N + 6);
  CHECK(farey_distance(Slope(1, 0), big) == 4);
  // the same continued-fraction shape at small scale, certified by BFS
  Slope small(7, 24);  // [0; 3, 2, 3]
  CHECK(farey_distance(Slope(1, 0), small) == 4);
  CHECK(bfs_distance_oracle(Slope(1, 0), small, 600) == 4);
}

TEST_CASE("bfs oracle matches pinned examples and bound contract") {
  CHECK(bfs_distance_oracle(Slope(0, 1), Slope(1, 0), 5) == 1);
  CHECK(bfs_distance_oracle(Slope(1, 0), Slope(2, 5), 50) == 3);
  CHECK_THROWS_AS(bfs_distance_oracle(Slope(1, 0), Slope(2, 5), 2),
                  std::out_of_range);
}

TEST_CASE("oracle agreement: exhaustive small box") {
  auto slopes = slopes_in_box(6);
  for (size_t i = 0; i < slopes.size(); ++i)
    for (size_t j = i + 1; j < slopes.size(); ++j) {
      auto d = farey_distance(slopes[i], slopes[j]);
      auto o = bfs_distance_oracle(slopes[i], slopes[j], 600);
      REQUIRE(o.has_value());
      INFO(slopes[i].str() << " vs " << slopes[j].str());
      CHECK(d == *o);
    }
}

TEST_CASE("farey_distance is a metric and unimodular-equivariant") {
  std::mt19937_64 rng(7);
  auto rand_slope = [&] {
    while (true) {
      int64_t p = static_cast<int64_t>(rng() % 2001) - 1000;
      int64_t q = static_cast<int64_t>(rng() % 1001);
      if (p == 0 && q == 0) continue;
      return Slope(p, q);
    }
  };
  auto rand_unimodular = [&] {
    UnimodularMatrix m;
    for (int k = 0; k < 12; ++k) {
      int64_t t = static_cast<int64_t>(rng() % 7) - 3;
      if (rng() & 1)
        m = m.mul(UnimodularMatrix(1, t, 0, 1));
      else
        m = m.mul(UnimodularMatrix(1, 0, t, 1));
    }
    return m;
  };
  for (int it = 0; it < 100; ++it) {
    Slope a = rand_slope(), b = rand_slope(), c = rand_slope();
    auto dab = farey_distance(a, b);
    CHECK(dab == farey_distance(b, a));
    CHECK((dab == 0) == (a == b));
    CHECK(farey_distance(a, c) <= dab + farey_distance(b, c));
    if (a != b) CHECK((dab == 1) == is_edge(SurfaceModel::TorusFarey, a, b));
    UnimodularMatrix m = rand_unimodular();
    CHECK(dab == farey_distance(apply_unimodular(m, a), apply_unimodular(m, b)));
  }
}

TEST_CASE("strip candidates carry exact intersection products") {
  Slope a(0, 1), b(5, 26);
  auto cand = strip_candidates(a, b, Rat(5, 2));
  bool saw_15 = false;
  for (const auto& v : cand) {
    CHECK(v.i_a == intersection_number(SurfaceModel::TorusFarey, v.slope, a));
    CHECK(v.i_b == intersection_number(SurfaceModel::TorusFarey, v.slope, b));
    CHECK(Rat(v.i_a * v.i_b) < Rat(5, 2));
    if (v.slope == Slope(1, 5)) saw_15 = true;
  }
  CHECK(saw_15);
}

TEST_CASE("strip candidates are complete versus brute force") {
  // every slope in a wide box with product below the bound must be found
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    int64_t ap = static_cast<int64_t>(rng() % 41) - 20;
    int64_t aq = static_cast<int64_t>(rng() % 21);
    int64_t bp = static_cast<int64_t>(rng() % 41) - 20;
    int64_t bq = static_cast<int64_t>(rng() % 21);
    if ((ap == 0 && aq == 0) || (bp == 0 && bq == 0)) continue;
    Slope a(ap, aq), b(bp, bq);
    if (a == b) continue;
    Int I = intersection_number(SurfaceModel::TorusFarey, a, b);
    if (I == 0) continue;
    Rat bound(I, 1);  // strict product < i(a,b): the widest certified window
    auto cand = strip_candidates(a, b, bound);
    std::set<Slope> got;
    for (const auto& v : cand) got.insert(v.slope);
    for (int64_t p = -60; p <= 60; ++p)
      for (int64_t q = 0; q <= 60; ++q) {
        if (p == 0 && q == 0) continue;
        if (boost::multiprecision::gcd(Int(p < 0 ? -p : p), Int(q)) != 1)
          continue;
        Slope g(p, q);
        Int prod = intersection_number(SurfaceModel::TorusFarey, g, a) *
                   intersection_number(SurfaceModel::TorusFarey, g, b);
        if (Rat(prod) < bound) {
          INFO(a.str() << " " << b.str() << " missing " << g.str());
          CHECK(got.count(g) == 1);
        }
      }
  }
}

TEST_CASE("all_geodesics_contain: pinned cases") {
  auto r1 = all_geodesics_contain(Slope(0, 1), Slope(5, 26), Slope(1, 5), 100);
  CHECK(r1.status == Containment::Contained);
  CHECK(r1.distance == 2);

  auto r2 = all_geodesics_contain(Slope(0, 1), Slope(1, 0), Slope(1, 1), 100);
  CHECK(r2.status == Containment::NotContained);

  // 1/3 lies on a geodesic from 1/0 to 2/5 but not on all of them
  // (1/0 - 1/1 - 1/2 - 2/5 avoids it)
  auto r3 = all_geodesics_contain(Slope(1, 0), Slope(2, 5), Slope(1, 3), 100);
  CHECK(r3.status == Containment::NotContained);
  CHECK(farey_distance(Slope(1, 0), Slope(1, 3)) +
            farey_distance(Slope(1, 3), Slope(2, 5)) ==
        r3.distance);

  CHECK_THROWS_AS(
      all_geodesics_contain(Slope(0, 1), Slope(1, 0), Slope(0, 1), 100),
      std::invalid_argument);

  // too-small certification box is reported, not guessed
  auto r4 = all_geodesics_contain(Slope(0, 1), Slope(5, 26), Slope(1, 5), 10);
  CHECK(r4.status == Containment::Inconclusive);
}

TEST_CASE("containment agrees with exhaustive geodesic enumeration") {
  // brute force: enumerate all geodesics in a small box via DP over BFS
  // layers, then compare membership verdicts
  auto slopes = slopes_in_box(5);
  int64_t bound = 400;
  std::mt19937_64 rng(3);
  for (int it = 0; it < 25; ++it) {
    const Slope& a = slopes[rng() % slopes.size()];
    const Slope& b = slopes[rng() % slopes.size()];
    if (a == b) continue;
    int64_t d = farey_distance(a, b);
    // collect vertices v with d(a,v) + d(v,b) = d: the union of geodesics
    // (within certification this is exactly the strip's geodesic support)
    std::vector<Slope> mid;
    for (const auto& v : slopes_in_box(30)) {
      if (v == a || v == b) continue;
      if (farey_distance(a, v) + farey_distance(v, b) == d) mid.push_back(v);
    }
    for (const auto& g : mid) {
      auto res = all_geodesics_contain(a, b, g, bound);
      REQUIRE(res.status != Containment::Inconclusive);
      // oracle verdict: does removing g disconnect all length-d paths?
      auto avoid = deletion_bfs_distance(a, b, g, bound, d);
      CHECK((res.status == Containment::Contained) == !avoid.has_value());
    }
  }
}

TEST_CASE("strip_max_entry bounds every vertex of every geodesic") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    int64_t ap = static_cast<int64_t>(rng() % 21) - 10;
    int64_t aq = static_cast<int64_t>(rng() % 11);
    int64_t bp = static_cast<int64_t>(rng() % 21) - 10;
    int64_t bq = static_cast<int64_t>(rng() % 11);
    if ((ap == 0 && aq == 0) || (bp == 0 && bq == 0)) continue;
    Slope a(ap, aq), b(bp, bq);
    if (a == b) continue;
    int64_t d = farey_distance(a, b);
    Int cert = strip_max_entry(a, b);
    // any vertex on any geodesic satisfies d(a,v)+d(v,b)=d; check none
    // outside the certification box exists within a wider search box
    for (const auto& v : slopes_in_box(40)) {
      if (farey_distance(a, v) + farey_distance(v, b) == d) {
        CHECK(abs_int(v.p) <= cert);
        CHECK(v.q <= cert);
      }
    }
  }
}

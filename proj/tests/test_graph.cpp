#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "curvecov/farey.hpp"
#include "curvecov/graph.hpp"
#include "curvecov/slope.hpp"

using namespace curvecov;

namespace {

// every canonical primitive slope with |p|, q <= bound
std::vector<Slope> slopes_in_box(int64_t bound) {
  std::vector<Slope> out;
  out.emplace_back(1, 0);
  for (int64_t q = 1; q <= bound; ++q)
    for (int64_t p = -bound; p <= bound; ++p)
      if (boost::multiprecision::gcd(Int(p < 0 ? -p : p), Int(q)) == 1)
        out.emplace_back(p, q);
  return out;
}

// adjacency by definition, as a set
std::set<Slope> brute_neighbors(const Slope& v, int64_t bound) {
  std::set<Slope> out;
  for (const Slope& w : slopes_in_box(bound))
    if (abs_int(cross(v, w)) == 1) out.insert(w);
  return out;
}

}  // namespace

TEST_CASE("bezout partner satisfies the determinant identity") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int64_t> pick(-2000, 2000);
  int done = 0;
  while (done < 200) {
    int64_t p = pick(rng), q = std::abs(pick(rng));
    if (p == 0 && q == 0) continue;
    int64_t g = std::gcd(p < 0 ? -p : p, q);
    p /= g;
    q /= g;
    if (q == 0) p = 1;
    auto [r, s] = bezout_partner(p, q);
    REQUIRE(p * s - q * r == 1);
    ++done;
  }
  auto [r, s] = bezout_partner(1, 0);
  CHECK(s == 1);
}

TEST_CASE("box neighbor enumeration matches the determinant definition") {
  const int64_t bound = 8;
  for (const Slope& v : slopes_in_box(bound)) {
    int64_t p = v.p.convert_to<int64_t>();
    int64_t q = v.q.convert_to<int64_t>();
    auto [r, s] = bezout_partner(p, q);
    std::set<Slope> got;
    int64_t reports = 0;
    for_each_box_neighbor(p, q, r, s, bound, [&](int64_t np, int64_t nq) {
      Slope n(np, nq);
      CHECK(abs_int(cross(v, n)) == 1);
      CHECK(slope_in_box(n, bound));
      got.insert(n);
      ++reports;
    });
    CHECK(got == brute_neighbors(v, bound));
    // only 1/0 may be reported twice (once per sign family)
    CHECK(reports <= static_cast<int64_t>(got.size()) + 1);
  }
}

TEST_CASE("neighbor enumeration accepts either orientation of the partner") {
  // (r, s) with p*s - q*r = -1 must enumerate the same neighbor set
  const int64_t bound = 7;
  Slope v(3, 5);
  auto [r, s] = bezout_partner(3, 5);
  std::set<Slope> fwd, rev;
  for_each_box_neighbor(3, 5, r, s, bound,
                        [&](int64_t np, int64_t nq) { fwd.emplace(np, nq); });
  for_each_box_neighbor(3, 5, -r, -s, bound,
                        [&](int64_t np, int64_t nq) { rev.emplace(np, nq); });
  CHECK(fwd == rev);
  CHECK(fwd == brute_neighbors(v, bound));
}

TEST_CASE("bfs distance is monotone in the box bound") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int64_t> pick(-12, 12);
  for (int iter = 0; iter < 40; ++iter) {
    int64_t p1 = pick(rng), q1 = std::abs(pick(rng));
    int64_t p2 = pick(rng), q2 = std::abs(pick(rng));
    if ((p1 == 0 && q1 == 0) || (p2 == 0 && q2 == 0)) continue;
    Slope a(p1, q1), b(p2, q2);
    std::optional<int64_t> prev;
    for (int64_t bound : {12, 20, 40, 200}) {
      auto d = bfs_distance_oracle(a, b, bound);
      if (prev && d) CHECK(*d <= *prev);
      if (prev && !d) CHECK(!prev.has_value());
      if (d) prev = d;
    }
    // large boxes agree with the exact distance
    REQUIRE(prev.has_value());
    CHECK(*prev == farey_distance(a, b));
  }
}

TEST_CASE("bfs oracle rejects endpoints outside the box") {
  CHECK_THROWS_AS(bfs_distance_oracle(Slope(0, 1), Slope(7, 50), 40),
                  std::out_of_range);
  CHECK_THROWS_AS(bfs_distance_oracle(Slope(61, 1), Slope(0, 1), 40),
                  std::out_of_range);
  CHECK_THROWS_AS(detail::BoxIndexer(0), std::invalid_argument);
  CHECK_THROWS_AS(detail::BoxIndexer(60001), std::invalid_argument);
}

TEST_CASE("deletion bfs semantics") {
  Slope a(1, 0), b(2, 5), g(1, 3);
  // 1/0 - 1/1 - 1/2 - 2/5 avoids 1/3, so deleting it keeps the distance
  auto d = deletion_bfs_distance(a, b, g, 50, 10);
  REQUIRE(d.has_value());
  CHECK(*d == 3);
  // every geodesic 0/1 .. 5/26 passes through 1/5; the detour is longer
  auto d2 = deletion_bfs_distance(Slope(0, 1), Slope(5, 26), Slope(1, 5), 600, 2);
  CHECK(!d2.has_value());
  // detour length is stable across much larger boxes (checked to 4000)
  auto d3 =
      deletion_bfs_distance(Slope(0, 1), Slope(5, 26), Slope(1, 5), 600, 10);
  REQUIRE(d3.has_value());
  CHECK(*d3 == 5);
  CHECK_THROWS_AS(deletion_bfs_distance(a, b, a, 50, 10),
                  std::invalid_argument);
}

TEST_CASE("farey ball structure around zero") {
  // neighbors of 0/1 in the box are 1/0 and +-1/q, q <= bound
  BallGraph ball = farey_ball(Slope(0, 1), 1, 10);
  CHECK(ball.vertices.size() == 22);
  for (const Slope& v : ball.vertices)
    if (!(v == Slope(0, 1))) CHECK(abs_int(cross(v, Slope(0, 1))) == 1);
  // vertices sorted and unique
  for (size_t i = 1; i < ball.vertices.size(); ++i)
    CHECK(ball.vertices[i - 1] < ball.vertices[i]);
  // index_of round-trips and rejects outsiders
  for (size_t i = 0; i < ball.vertices.size(); ++i)
    CHECK(ball.index_of(ball.vertices[i]) == static_cast<int32_t>(i));
  CHECK_THROWS_AS(ball.index_of(Slope(7, 9)), std::invalid_argument);
  CHECK_THROWS_AS(farey_ball(Slope(11, 1), 1, 10), std::out_of_range);
}

TEST_CASE("farey ball adjacency is the induced subgraph") {
  const int64_t bound = 9;
  BallGraph ball = farey_ball(Slope(1, 2), 2, bound);
  for (size_t i = 0; i < ball.vertices.size(); ++i) {
    std::set<int32_t> got(ball.adj[i].begin(), ball.adj[i].end());
    CHECK(got.size() == ball.adj[i].size());  // sorted unique
    std::set<int32_t> want;
    for (size_t j = 0; j < ball.vertices.size(); ++j)
      if (abs_int(cross(ball.vertices[i], ball.vertices[j])) == 1)
        want.insert(static_cast<int32_t>(j));
    CHECK(got == want);
  }
}

TEST_CASE("all pairs distances agree with an independent search") {
  const int64_t bound = 8;
  BallGraph ball = farey_ball(Slope(0, 1), 3, bound);
  auto d = all_pairs_distances(ball);
  size_t n = ball.vertices.size();
  REQUIRE(d.size() == n);

  // independent map-based BFS over the same adjacency-by-definition
  std::map<Slope, std::vector<Slope>> adj;
  for (const Slope& v : ball.vertices)
    for (const Slope& w : ball.vertices)
      if (abs_int(cross(v, w)) == 1) adj[v].push_back(w);
  auto brute_dist = [&](const Slope& from, const Slope& to) {
    std::map<Slope, int32_t> seen{{from, 0}};
    std::vector<Slope> queue{from};
    for (size_t h = 0; h < queue.size(); ++h) {
      if (queue[h] == to) return seen[queue[h]];
      for (const Slope& w : adj[queue[h]])
        if (seen.emplace(w, seen[queue[h]] + 1).second) queue.push_back(w);
    }
    return seen.count(to) ? seen[to] : -1;
  };

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  for (int iter = 0; iter < 60; ++iter) {
    size_t i = pick(rng), j = pick(rng);
    CHECK(d[i][j] == brute_dist(ball.vertices[i], ball.vertices[j]));
    CHECK(d[i][j] == d[j][i]);
  }
  for (size_t i = 0; i < n; ++i) CHECK(d[i][i] == 0);
}

#ifndef CURVECOV_GRAPH_HPP
#define CURVECOV_GRAPH_HPP

/// \brief Bounded Farey-graph machinery: breadth-first distance oracle over
/// the subgraph induced on slopes with |p|, q <= bound, deletion BFS (one
/// vertex removed), and finite ball extraction. This is the certification
/// side of the library: simple, independently auditable graph search that
/// the closed-form distance code is tested against.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvecov/slope.hpp"

namespace curvecov {

namespace detail {

inline int64_t floor_div64(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline int64_t ceil_div64(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

/// Extended Euclid: returns (x, y) with a*x + b*y = gcd(a, b), a, b >= 0.
inline std::pair<int64_t, int64_t> ext_gcd(int64_t a, int64_t b) {
  int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    int64_t q = a / b;
    int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  return {x0, y0};
}

}  // namespace detail

/// A partner (r, s) with p*s - q*r = 1, for primitive (p, q) with q >= 0.
inline std::pair<int64_t, int64_t> bezout_partner(int64_t p, int64_t q) {
  int64_t ap = p < 0 ? -p : p;
  auto [x, y] = detail::ext_gcd(ap, q);
  if (p < 0) x = -x;
  // x*p + y*q = 1  =>  choose s = x, r = -y: p*s - q*r = 1.
  return {-y, x};
}

/// Enumerates the neighbors of canonical vertex (p, q) inside the box
/// |p'| <= bound, 0 <= q' <= bound, invoking fn(p', q') on each, in
/// canonical form (q' = 0 remapped to (1, 0)). (r, s) must satisfy
/// |p*s - q*r| = 1. The same neighbor is never reported twice except that
/// (1, 0) may appear once per sign family.
template <class F>
void for_each_box_neighbor(int64_t p, int64_t q, int64_t r, int64_t s,
                           int64_t bound, F&& fn) {
  if (q == 0) {
    for (int64_t t = -bound; t <= bound; ++t) fn(t, int64_t{1});
    return;
  }
  for (int sign = 0; sign < 2; ++sign) {
    int64_t r0 = sign ? -r : r;
    int64_t s0 = sign ? -s : s;
    int64_t tlo = detail::ceil_div64(-s0, q);
    int64_t thi = detail::floor_div64(bound - s0, q);
    if (p > 0) {
      tlo = std::max(tlo, detail::ceil_div64(-bound - r0, p));
      thi = std::min(thi, detail::floor_div64(bound - r0, p));
    } else if (p < 0) {
      tlo = std::max(tlo, detail::ceil_div64(bound - r0, p));
      thi = std::min(thi, detail::floor_div64(-bound - r0, p));
    }
    for (int64_t t = tlo; t <= thi; ++t) {
      int64_t np = r0 + t * p;
      int64_t nq = s0 + t * q;
      if (nq == 0)
        fn(int64_t{1}, int64_t{0});
      else
        fn(np, nq);
    }
  }
}

/// True when the slope fits the box |p| <= bound, q <= bound.
inline bool slope_in_box(const Slope& s, int64_t bound) {
  return abs_int(s.p) <= bound && s.q <= bound;
}

namespace detail {

constexpr int64_t kMaxBoxBound = 60000;  // dist array = (2B+1)(B+1) bytes

struct BoxIndexer {
  int64_t bound;
  int64_t stride;  // bound + 1
  explicit BoxIndexer(int64_t b) : bound(b), stride(b + 1) {
    if (b < 1 || b > kMaxBoxBound)
      throw std::invalid_argument("box bound must be in [1, 60000]");
  }
  size_t size() const {
    return static_cast<size_t>(2 * bound + 1) * static_cast<size_t>(stride);
  }
  size_t idx(int64_t p, int64_t q) const {
    return static_cast<size_t>(p + bound) * static_cast<size_t>(stride) +
           static_cast<size_t>(q);
  }
};

struct BfsNode {
  int32_t p, q;  // vertex
  int32_t r, s;  // Bezout partner inherited from the BFS parent
};

/// Core BFS over the box, optionally skipping one vertex ("deleted") and
/// capping the search depth. Returns the distance to `to` if reached.
inline std::optional<int64_t> box_bfs(const Slope& from, const Slope& to,
                                      int64_t bound,
                                      const std::optional<Slope>& deleted,
                                      int64_t depth_cap) {
  if (!slope_in_box(from, bound) || !slope_in_box(to, bound))
    throw std::out_of_range("box_bfs: endpoint outside the bound box");
  if (deleted && (*deleted == from || *deleted == to))
    throw std::invalid_argument("box_bfs: deleted vertex equals an endpoint");
  if (from == to) return 0;

  BoxIndexer ix(bound);
  std::vector<uint8_t> dist(ix.size(), 255);
  int64_t fp = from.p.convert_to<int64_t>();
  int64_t fq = from.q.convert_to<int64_t>();
  int64_t tp = to.p.convert_to<int64_t>();
  int64_t tq = to.q.convert_to<int64_t>();
  bool has_del = deleted.has_value();
  int64_t dp = 0, dq = 0;
  if (has_del) {
    dp = deleted->p.convert_to<int64_t>();
    dq = deleted->q.convert_to<int64_t>();
  }

  auto [r0, s0] = bezout_partner(fp, fq);
  std::vector<BfsNode> frontier{{static_cast<int32_t>(fp),
                                 static_cast<int32_t>(fq),
                                 static_cast<int32_t>(r0),
                                 static_cast<int32_t>(s0)}};
  dist[ix.idx(fp, fq)] = 0;
  std::vector<BfsNode> next;
  for (int64_t level = 0; !frontier.empty() && level < depth_cap; ++level) {
    next.clear();
    for (const BfsNode& v : frontier) {
      bool found = false;
      for_each_box_neighbor(
          v.p, v.q, v.r, v.s, bound, [&](int64_t np, int64_t nq) {
            if (found) return;
            if (has_del && np == dp && nq == dq) return;
            size_t i = ix.idx(np, nq);
            if (dist[i] != 255) return;
            dist[i] = static_cast<uint8_t>(std::min<int64_t>(level + 1, 254));
            if (np == tp && nq == tq) {
              found = true;
              return;
            }
            next.push_back({static_cast<int32_t>(np), static_cast<int32_t>(nq),
                            v.p, v.q});
          });
      if (found) return level + 1;
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

}  // namespace detail

/// BFS distance in the subgraph induced on slopes with |p|, q <= bound.
/// An upper bound for true Farey distance, non-increasing in bound.
/// Returns nullopt when unreachable within the box; throws std::out_of_range
/// when an endpoint lies outside the box.
inline std::optional<int64_t> bfs_distance_oracle(const Slope& a,
                                                  const Slope& b,
                                                  int64_t bound) {
  return detail::box_bfs(a, b, bound, std::nullopt,
                         std::numeric_limits<int64_t>::max());
}

/// BFS distance from a to b in the box with vertex g removed, searching only
/// to depth depth_cap. Returns nullopt when no path of length <= depth_cap
/// avoids g inside the box.
inline std::optional<int64_t> deletion_bfs_distance(const Slope& a,
                                                    const Slope& b,
                                                    const Slope& g,
                                                    int64_t bound,
                                                    int64_t depth_cap) {
  return detail::box_bfs(a, b, bound, g, depth_cap);
}

/// A finite induced subgraph with canonical vertex order and sorted
/// adjacency lists; the retraction checker and ball-based tests consume it.
struct BallGraph {
  std::vector<Slope> vertices;         // sorted canonically
  std::vector<std::vector<int32_t>> adj;  // sorted neighbor indices

  int32_t index_of(const Slope& s) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), s);
    if (it == vertices.end() || !(*it == s))
      throw std::invalid_argument("BallGraph: slope not a vertex: " + s.str());
    return static_cast<int32_t>(it - vertices.begin());
  }
};

/// The ball of the given radius about center, inside the box |p|, q <= bound,
/// as an induced subgraph. Edges between any two ball members are included.
inline BallGraph farey_ball(const Slope& center, int64_t radius,
                            int64_t bound) {
  if (!slope_in_box(center, bound))
    throw std::out_of_range("farey_ball: center outside the bound box");
  int64_t cp = center.p.convert_to<int64_t>();
  int64_t cq = center.q.convert_to<int64_t>();

  std::map<std::pair<int64_t, int64_t>, int64_t> depth;  // vertex -> level
  std::vector<detail::BfsNode> frontier, next;
  auto [r0, s0] = bezout_partner(cp, cq);
  depth[{cp, cq}] = 0;
  frontier.push_back({static_cast<int32_t>(cp), static_cast<int32_t>(cq),
                      static_cast<int32_t>(r0), static_cast<int32_t>(s0)});
  for (int64_t level = 0; level < radius && !frontier.empty(); ++level) {
    next.clear();
    for (const auto& v : frontier) {
      for_each_box_neighbor(v.p, v.q, v.r, v.s, bound,
                            [&](int64_t np, int64_t nq) {
                              auto key = std::make_pair(np, nq);
                              if (depth.emplace(key, level + 1).second)
                                next.push_back({static_cast<int32_t>(np),
                                                static_cast<int32_t>(nq), v.p,
                                                v.q});
                            });
    }
    frontier.swap(next);
  }

  BallGraph g;
  g.vertices.reserve(depth.size());
  for (const auto& [pq, lvl] : depth) g.vertices.emplace_back(pq.first, pq.second);
  std::sort(g.vertices.begin(), g.vertices.end());
  g.adj.resize(g.vertices.size());
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    int64_t p = g.vertices[i].p.convert_to<int64_t>();
    int64_t q = g.vertices[i].q.convert_to<int64_t>();
    auto [r, s] = bezout_partner(p, q);
    for_each_box_neighbor(p, q, r, s, bound, [&](int64_t np, int64_t nq) {
      if (!depth.count({np, nq})) return;
      Slope n(np, nq);
      auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), n);
      g.adj[i].push_back(static_cast<int32_t>(it - g.vertices.begin()));
    });
    std::sort(g.adj[i].begin(), g.adj[i].end());
    g.adj[i].erase(std::unique(g.adj[i].begin(), g.adj[i].end()),
                   g.adj[i].end());
  }
  return g;
}

/// All-pairs BFS distances over a BallGraph (-1 = unreachable).
inline std::vector<std::vector<int32_t>> all_pairs_distances(
    const BallGraph& g) {
  size_t n = g.vertices.size();
  std::vector<std::vector<int32_t>> d(n, std::vector<int32_t>(n, -1));
  std::vector<int32_t> queue;
  for (size_t s = 0; s < n; ++s) {
    auto& row = d[s];
    row[s] = 0;
    queue.assign(1, static_cast<int32_t>(s));
    for (size_t head = 0; head < queue.size(); ++head) {
      int32_t v = queue[head];
      for (int32_t w : g.adj[v])
        if (row[w] < 0) {
          row[w] = row[v] + 1;
          queue.push_back(w);
        }
    }
  }
  return d;
}

}  // namespace curvecov

#endif  // CURVECOV_GRAPH_HPP

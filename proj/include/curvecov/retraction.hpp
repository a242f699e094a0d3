#ifndef CURVECOV_RETRACTION_HPP
#define CURVECOV_RETRACTION_HPP

/// \brief Finite certificates for graph retractions. Given simplicial data
/// Pi : G -> H and P : H -> G with P after Pi the identity, the checker
/// validates the data, tests simpliciality of both maps, and compares all
/// pairwise distances d_G(a, b) against d_H(Pi a, Pi b), reporting the
/// first mismatch as an explicit counterexample.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvecov/graph.hpp"

namespace curvecov {

/// Input bundle: two adjacency lists and the two vertex maps between them.
struct FiniteGraphMapCheck {
  std::vector<std::vector<int32_t>> g_adj;  // graph downstairs
  std::vector<std::vector<int32_t>> h_adj;  // graph upstairs
  std::vector<int32_t> pi;                  // Pi : G -> H
  std::vector<int32_t> p;                   // P  : H -> G
};

struct RetractionCounterexample {
  int32_t a, b;    // vertices of G
  int64_t dist_g;  // d_G(a, b)
  int64_t dist_h;  // d_H(Pi a, Pi b); -1 when unreachable
};

struct RetractionVerdict {
  bool simplicial_pi = true;
  bool simplicial_p = true;
  bool isometric = true;
  std::optional<RetractionCounterexample> counterexample;

  bool passed() const { return simplicial_pi && simplicial_p && isometric; }
};

namespace detail {

inline std::vector<int64_t> bfs_from(
    const std::vector<std::vector<int32_t>>& adj, int32_t src) {
  std::vector<int64_t> dist(adj.size(), -1);
  std::queue<int32_t> q;
  dist[static_cast<size_t>(src)] = 0;
  q.push(src);
  while (!q.empty()) {
    int32_t v = q.front();
    q.pop();
    for (int32_t w : adj[static_cast<size_t>(v)])
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
        q.push(w);
      }
  }
  return dist;
}

inline void validate_adjacency(const std::vector<std::vector<int32_t>>& adj,
                               const char* name) {
  int32_t n = static_cast<int32_t>(adj.size());
  for (int32_t v = 0; v < n; ++v)
    for (int32_t w : adj[static_cast<size_t>(v)]) {
      if (w < 0 || w >= n)
        throw std::invalid_argument(
            std::string("check_retraction: ") + name + " lists vertex " +
            std::to_string(w) + " out of range at vertex " +
            std::to_string(v));
      if (w == v)
        throw std::invalid_argument(std::string("check_retraction: ") + name +
                                    " has a self-loop at vertex " +
                                    std::to_string(v));
      const auto& back = adj[static_cast<size_t>(w)];
      if (std::find(back.begin(), back.end(), v) == back.end())
        throw std::invalid_argument(
            std::string("check_retraction: ") + name +
            " adjacency is asymmetric between vertices " + std::to_string(v) +
            " and " + std::to_string(w));
    }
}

inline void validate_map(const std::vector<int32_t>& f, size_t domain,
                         size_t codomain, const char* name) {
  if (f.size() != domain)
    throw std::invalid_argument(std::string("check_retraction: ") + name +
                                " has " + std::to_string(f.size()) +
                                " entries for " + std::to_string(domain) +
                                " vertices");
  for (size_t v = 0; v < f.size(); ++v)
    if (f[v] < 0 || static_cast<size_t>(f[v]) >= codomain)
      throw std::invalid_argument(std::string("check_retraction: ") + name +
                                  " maps vertex " + std::to_string(v) +
                                  " to out-of-range " + std::to_string(f[v]));
}

/// True when f sends every edge of adj to an edge or a single vertex.
inline bool edges_go_to_edges(const std::vector<std::vector<int32_t>>& adj,
                              const std::vector<int32_t>& f,
                              const std::vector<std::vector<int32_t>>& target) {
  for (int32_t v = 0; v < static_cast<int32_t>(adj.size()); ++v)
    for (int32_t w : adj[static_cast<size_t>(v)]) {
      if (w < v) continue;  // each undirected edge once
      int32_t fv = f[static_cast<size_t>(v)], fw = f[static_cast<size_t>(w)];
      if (fv == fw) continue;
      const auto& nb = target[static_cast<size_t>(fv)];
      if (std::find(nb.begin(), nb.end(), fw) == nb.end()) return false;
    }
  return true;
}

}  // namespace detail

/// Validates the bundle (throwing std::invalid_argument on malformed data
/// or when P after Pi is not the identity), then reports simpliciality of
/// both maps and whether Pi preserves every pairwise distance. The first
/// distance mismatch, in vertex order, is returned as the counterexample.
inline RetractionVerdict check_retraction(const FiniteGraphMapCheck& c) {
  detail::validate_adjacency(c.g_adj, "downstairs graph");
  detail::validate_adjacency(c.h_adj, "upstairs graph");
  detail::validate_map(c.pi, c.g_adj.size(), c.h_adj.size(), "Pi");
  detail::validate_map(c.p, c.h_adj.size(), c.g_adj.size(), "P");
  for (size_t v = 0; v < c.pi.size(); ++v)
    if (c.p[static_cast<size_t>(c.pi[v])] != static_cast<int32_t>(v))
      throw std::invalid_argument(
          "check_retraction: P(Pi(" + std::to_string(v) + ")) = " +
          std::to_string(c.p[static_cast<size_t>(c.pi[v])]) +
          ", so P is not a retraction onto the image");

  RetractionVerdict verdict;
  verdict.simplicial_pi = detail::edges_go_to_edges(c.g_adj, c.pi, c.h_adj);
  verdict.simplicial_p = detail::edges_go_to_edges(c.h_adj, c.p, c.g_adj);

  for (int32_t a = 0; a < static_cast<int32_t>(c.g_adj.size()); ++a) {
    std::vector<int64_t> dg = detail::bfs_from(c.g_adj, a);
    std::vector<int64_t> dh =
        detail::bfs_from(c.h_adj, c.pi[static_cast<size_t>(a)]);
    for (int32_t b = a + 1; b < static_cast<int32_t>(c.g_adj.size()); ++b) {
      int64_t lhs = dg[static_cast<size_t>(b)];
      int64_t rhs =
          dh[static_cast<size_t>(c.pi[static_cast<size_t>(b)])];
      if (lhs != rhs) {
        verdict.isometric = false;
        verdict.counterexample = RetractionCounterexample{a, b, lhs, rhs};
        return verdict;
      }
    }
  }
  return verdict;
}

/// Identity bundle on a ball graph: both maps the identity, both graphs the
/// ball itself. Always passes.
inline FiniteGraphMapCheck make_identity_check(const BallGraph& g) {
  FiniteGraphMapCheck c;
  c.g_adj = g.adj;
  c.h_adj = g.adj;
  c.pi.resize(g.vertices.size());
  for (size_t i = 0; i < c.pi.size(); ++i) c.pi[i] = static_cast<int32_t>(i);
  c.p = c.pi;
  return c;
}

/// Adversarial bundle: the upstairs graph gains a chord between the first
/// distance-2 pair, with both maps still the identity. The chord makes P
/// non-simplicial and shortens exactly the distances through it, so the
/// checker must produce a counterexample.
inline FiniteGraphMapCheck make_chord_check(const BallGraph& g) {
  FiniteGraphMapCheck c = make_identity_check(g);
  int32_t n = static_cast<int32_t>(g.adj.size());
  for (int32_t a = 0; a < n; ++a) {
    std::vector<int64_t> d = detail::bfs_from(g.adj, a);
    for (int32_t b = a + 1; b < n; ++b)
      if (d[static_cast<size_t>(b)] == 2) {
        c.h_adj[static_cast<size_t>(a)].push_back(b);
        c.h_adj[static_cast<size_t>(b)].push_back(a);
        return c;
      }
  }
  throw std::invalid_argument(
      "make_chord_check: graph has no distance-2 pair to chord");
}

}  // namespace curvecov

#endif  // CURVECOV_RETRACTION_HPP

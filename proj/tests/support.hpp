#pragma once

// Test-only reference computations. Everything here works from the raw
// tree structure (adjacency and BFS distances) and never calls into the
// layer decomposition or forced-labeling code it is used to check.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "treemagic/tree.hpp"

namespace treemagic::testing {

inline Tree path_tree(std::size_t n) {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) edges.push_back({i - 1, i});
  return Tree::from_edges(names, edges);
}

/// K_{1,leaves}: hub "c" then leaves "l0".."l{n-1}".
inline Tree star_tree(std::size_t leaves) {
  std::vector<std::string> names{"c"};
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < leaves; ++i) {
    names.push_back("l" + std::to_string(i));
    edges.push_back({0, i + 1});
  }
  return Tree::from_edges(names, edges);
}

/// Two adjacent hubs "c1" and "c2" with `a` and `b` leaves.
inline Tree double_star(std::size_t a, std::size_t b) {
  std::vector<std::string> names{"c1", "c2"};
  std::vector<Edge> edges{{0, 1}};
  for (std::size_t i = 0; i < a; ++i) {
    names.push_back("a" + std::to_string(i));
    edges.push_back({0, names.size() - 1});
  }
  for (std::size_t i = 0; i < b; ++i) {
    names.push_back("b" + std::to_string(i));
    edges.push_back({1, names.size() - 1});
  }
  return Tree::from_edges(names, edges);
}

inline std::vector<int> bfs_distance(const Tree& t, VertexId s) {
  std::vector<int> d(t.vertex_count(), -1);
  std::deque<VertexId> q{s};
  d[s] = 0;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (const auto& inc : t.incident(v))
      if (d[inc.neighbor] < 0) {
        d[inc.neighbor] = d[v] + 1;
        q.push_back(inc.neighbor);
      }
  }
  return d;
}

/// Reference structure computed straight from the definitions: the center
/// as the minimum-eccentricity vertices, delta as distance to the nearest
/// center vertex, and branches as vertex sets obeying the path condition.
struct ReferenceLayers {
  std::vector<VertexId> center;  // c, or c1 then c2 (c1 sorts first by name)
  int diameter = 0;
  int k = 0;
  std::vector<int> delta;
  std::vector<std::vector<int>> dist;  // all pairs

  bool odd() const { return center.size() == 2; }

  explicit ReferenceLayers(const Tree& t) {
    const std::size_t n = t.vertex_count();
    for (VertexId v = 0; v < n; ++v) dist.push_back(bfs_distance(t, v));
    std::vector<int> ecc(n);
    for (VertexId v = 0; v < n; ++v) ecc[v] = *std::max_element(dist[v].begin(), dist[v].end());
    diameter = *std::max_element(ecc.begin(), ecc.end());
    k = diameter / 2;
    const int radius = *std::min_element(ecc.begin(), ecc.end());
    for (VertexId v = 0; v < n; ++v)
      if (ecc[v] == radius) center.push_back(v);
    if (center.size() == 2 && t.name(center[1]) < t.name(center[0])) std::swap(center[0], center[1]);
    delta.assign(n, 0);
    for (VertexId v = 0; v < n; ++v) {
      delta[v] = dist[center[0]][v];
      if (odd()) delta[v] = std::min(delta[v], dist[center[1]][v]);
    }
  }

  /// Vertices on the unique u-v path: w with d(u,w) + d(w,v) = d(u,v).
  bool on_path(VertexId u, VertexId v, VertexId w) const { return dist[u][w] + dist[w][v] == dist[u][v]; }

  bool in_branch(VertexId u, VertexId v) const {
    const std::size_t n = delta.size();
    if (!odd() && u == center[0]) return true;
    if (odd() && (u == center[0] || u == center[1])) {
      const VertexId other = u == center[0] ? center[1] : center[0];
      return !on_path(v, u, other);
    }
    if (delta[v] < delta[u]) return false;
    for (VertexId w = 0; w < n; ++w)
      if (on_path(u, v, w) && delta[w] < delta[u]) return false;
    return true;
  }

  std::int64_t branch_count(VertexId u, int d) const {
    std::int64_t c = 0;
    for (VertexId v = 0; v < delta.size(); ++v)
      if (delta[v] == d && in_branch(u, v)) ++c;
    return c;
  }

  std::int64_t layer_size(int d) const { return std::count(delta.begin(), delta.end(), d); }
};

/// Forced labeling by backward propagation: each edge toward the center
/// takes whatever value makes its outer endpoint sum to 1, given the
/// already-computed edges further out. The center edge c1c2 completes c1.
inline std::vector<std::int64_t> propagated_forced(const Tree& t, const ReferenceLayers& ref) {
  const std::size_t n = t.vertex_count();
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return ref.delta[a] > ref.delta[b]; });

  std::vector<std::int64_t> f(t.edge_count(), 0);
  std::vector<std::int64_t> outward(n, 0);  // sum of f over edges to children
  auto is_center = [&](VertexId v) { return std::find(ref.center.begin(), ref.center.end(), v) != ref.center.end(); };
  for (VertexId u : order) {
    if (is_center(u)) continue;
    for (const auto& inc : t.incident(u)) {
      if (ref.delta[inc.neighbor] == ref.delta[u] - 1) {
        f[inc.edge] = 1 - outward[u];
        outward[inc.neighbor] += f[inc.edge];
      }
    }
  }
  if (ref.odd()) {
    for (const auto& inc : t.incident(ref.center[0]))
      if (inc.neighbor == ref.center[1]) f[inc.edge] = 1 - outward[ref.center[0]];
  }
  return f;
}

/// sigma recovered from the vertex sums of the propagated labeling at x = 1:
/// even diameter gives l+(c) - 1, odd gives (-1)^(k+1) (l+(c2) - 1).
inline std::int64_t propagated_sigma(const Tree& t, const ReferenceLayers& ref) {
  const auto f = propagated_forced(t, ref);
  const VertexId probe = ref.odd() ? ref.center[1] : ref.center[0];
  std::int64_t sum = 0;
  for (const auto& inc : t.incident(probe)) sum += f[inc.edge];
  if (!ref.odd()) return sum - 1;
  return (ref.k % 2 == 0 ? -1 : 1) * (sum - 1);
}

/// Textbook O(n^2) Prüfer decoding: repeatedly attach the smallest current
/// leaf to the next code entry. Returns sorted (min,max) edge pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> reference_prufer_edges(const std::vector<std::size_t>& code,
                                                                               std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (auto v : code) ++degree[v];
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto v : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    --degree[leaf];
    --degree[v];
  }
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 1) rest.push_back(v);
  edges.emplace_back(rest[0], rest[1]);
  std::sort(edges.begin(), edges.end());
  return edges;
}

inline std::vector<std::pair<std::size_t, std::size_t>> sorted_edges(const Tree& t) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : t.edges()) edges.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b));
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace treemagic::testing

// Small builders and brute-force oracles shared by the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "geosssp/graph.hpp"
#include "geosssp/rng.hpp"

namespace geosssp::testing {

inline EuclideanGraph path_graph(const std::vector<double> &weights) {
  std::vector<double> coords;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i <= weights.size(); ++i) {
    coords.push_back(static_cast<double>(i));
    coords.push_back(0.0);
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), weights[i]});
  }
  return EuclideanGraph(2, coords, edges);
}

/// Random points in the unit square with random edges of degree at most
/// max_degree. Integer weights in [1, 100] or uniform reals in (0, 1].
inline EuclideanGraph random_graph(
    std::size_t n, std::size_t edges_wanted, std::size_t max_degree, bool integer_weights,
    std::uint64_t seed, std::size_t d = 2
) {
  Rng rng(seed);
  std::vector<double> coords(n * d);
  for (double &x : coords) {
    x = rng.uniform();
  }
  std::vector<std::size_t> deg(n, 0);
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<Edge> edges;
  for (std::size_t tries = 0; edges.size() < edges_wanted && tries < 50 * edges_wanted + 100;
       ++tries) {
    auto u = static_cast<VertexId>(rng.below(n));
    auto v = static_cast<VertexId>(rng.below(n));
    if (u == v || deg[u] >= max_degree || deg[v] >= max_degree) {
      continue;
    }
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      continue;
    }
    ++deg[u];
    ++deg[v];
    const double w =
        integer_weights ? static_cast<double>(1 + rng.below(100)) : rng.uniform_open_closed();
    edges.push_back({u, v, w});
  }
  return EuclideanGraph(d, coords, edges);
}

/// Same graph with integer weights in [1, 100].
inline EuclideanGraph with_integer_weights(const EuclideanGraph &g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges = g.edges();
  for (Edge &e : edges) {
    e.w = static_cast<double>(1 + rng.below(100));
  }
  return EuclideanGraph(g.dim(), g.coords(), edges);
}

inline std::vector<double> bellman_ford(const EuclideanGraph &g, VertexId s) {
  std::vector<double> dist(g.n(), kInfinity);
  dist[s] = 0.0;
  for (std::size_t round = 0; round < g.n(); ++round) {
    bool changed = false;
    for (const Edge &e : g.edges()) {
      if (dist[e.u] + e.w < dist[e.v]) {
        dist[e.v] = dist[e.u] + e.w;
        changed = true;
      }
      if (dist[e.v] + e.w < dist[e.u]) {
        dist[e.u] = dist[e.v] + e.w;
        changed = true;
      }
    }
    if (!changed) {
      break;
    }
  }
  return dist;
}

/// True iff no path avoids S between a vertex of A and a vertex of B.
inline bool separates(
    const EuclideanGraph &g, const std::vector<VertexId> &S, const std::vector<VertexId> &A,
    const std::vector<VertexId> &B
) {
  std::vector<char> blocked(g.n(), 0);
  for (const VertexId v : S) {
    blocked[v] = 1;
  }
  std::vector<char> reached(g.n(), 0);
  std::queue<VertexId> q;
  for (const VertexId a : A) {
    reached[a] = 1;
    q.push(a);
  }
  while (!q.empty()) {
    const VertexId x = q.front();
    q.pop();
    for (const EdgeId e : g.incident(x)) {
      const VertexId y = g.edge(e).other(x);
      if (!blocked[y] && !reached[y]) {
        reached[y] = 1;
        q.push(y);
      }
    }
  }
  return std::none_of(B.begin(), B.end(), [&](VertexId b) { return reached[b] != 0; });
}

/// Labels equal exactly, or within a relative tolerance.
inline bool labels_match(const std::vector<double> &a, const std::vector<double> &b, double rel) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) {
      continue;
    }
    const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
    if (!(std::abs(a[i] - b[i]) <= rel * scale)) {
      return false;
    }
  }
  return true;
}

} // namespace geosssp::testing

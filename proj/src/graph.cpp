/*******************************************************************************
 * @file:   graph.cpp
 ******************************************************************************/
#include "geosssp/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "geosssp/error.hpp"

namespace geosssp {

EuclideanGraph::EuclideanGraph(std::size_t dim, std::vector<double> coords, std::vector<Edge> edges)
    : _dim(dim),
      _coords(std::move(coords)),
      _edges(std::move(edges)) {
  if (_dim == 0) {
    if (!_coords.empty() || !_edges.empty()) {
      throw ContractError("graph", "dimension must be positive");
    }
    return;
  }
  if (_coords.size() % _dim != 0) {
    throw ContractError("graph", "coordinate array is not a multiple of the dimension");
  }
  for (const double x : _coords) {
    if (!std::isfinite(x)) {
      throw ContractError("graph", "non-finite coordinate");
    }
  }
  const std::size_t nv = n();
  std::vector<std::size_t> degree(nv + 1, 0);
  for (const Edge &e : _edges) {
    if (e.u >= nv || e.v >= nv) {
      throw ContractError("graph", "edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw ContractError("graph", "self-loop at vertex " + std::to_string(e.u));
    }
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) {
      throw ContractError("graph", "edge weights must be finite and >= 0");
    }
    ++degree[e.u];
    ++degree[e.v];
  }
  _adj_begin.assign(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    _adj_begin[v + 1] = _adj_begin[v] + degree[v];
  }
  _adj.resize(_adj_begin[nv]);
  std::vector<std::size_t> fill(_adj_begin.begin(), _adj_begin.end() - 1);
  for (EdgeId e = 0; e < _edges.size(); ++e) {
    _adj[fill[_edges[e].u]++] = e;
    _adj[fill[_edges[e].v]++] = e;
  }
  // Duplicate detection: neighbors of each vertex must be distinct.
  std::vector<VertexId> seen(nv, kInvalidVertex);
  for (VertexId v = 0; v < nv; ++v) {
    for (const EdgeId e : incident(v)) {
      const VertexId u = _edges[e].other(v);
      if (seen[u] == v) {
        throw ContractError(
            "graph", "duplicate edge " + std::to_string(v) + "-" + std::to_string(u)
        );
      }
      seen[u] = v;
    }
  }
}

EuclideanGraph EuclideanGraph::with_lengths(
    std::size_t dim, std::vector<double> coords,
    const std::vector<std::pair<VertexId, VertexId>> &pairs
) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  const std::size_t nv = dim == 0 ? 0 : coords.size() / dim;
  for (const auto &[u, v] : pairs) {
    if (u >= nv || v >= nv) {
      throw ContractError("graph", "edge endpoint out of range");
    }
    const PointView pu = PointView(coords).subspan(u * dim, dim);
    const PointView pv = PointView(coords).subspan(v * dim, dim);
    edges.push_back({u, v, distance(pu, pv)});
  }
  return EuclideanGraph(dim, std::move(coords), std::move(edges));
}

std::size_t EuclideanGraph::max_degree() const {
  std::size_t best = 0;
  for (VertexId v = 0; v < n(); ++v) {
    best = std::max(best, degree(v));
  }
  return best;
}

VertexMap VertexMap::identity(std::size_t n) {
  VertexMap map;
  map.forward.resize(n);
  map.backward.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    map.forward[v] = {v};
    map.backward[v] = v;
  }
  return map;
}

std::pair<EuclideanGraph, VertexMap> degree3_transform(const EuclideanGraph &g) {
  const std::size_t dim = g.dim();
  VertexMap map;
  map.forward.resize(g.n());
  std::vector<double> coords;
  coords.reserve(g.coords().size());

  // slot_of[e][0/1]: transformed id standing in for edge e's u / v endpoint.
  std::vector<std::array<VertexId, 2>> slot_of(g.m(), {kInvalidVertex, kInvalidVertex});
  std::vector<Edge> edges;
  edges.reserve(g.m() + 2 * g.m());

  auto add_vertex = [&](VertexId original) {
    const auto id = static_cast<VertexId>(map.backward.size());
    map.backward.push_back(original);
    map.forward[original].push_back(id);
    const PointView p = g.point(original);
    coords.insert(coords.end(), p.begin(), p.end());
    return id;
  };

  for (VertexId v = 0; v < g.n(); ++v) {
    const auto inc = g.incident(v);
    if (inc.size() <= 3) {
      const VertexId id = add_vertex(v);
      for (const EdgeId e : inc) {
        slot_of[e][g.edge(e).u == v ? 0 : 1] = id;
      }
      continue;
    }

    // Cyclic order by angle in the first two coordinates, ties by neighbor id.
    std::vector<std::pair<double, EdgeId>> order;
    order.reserve(inc.size());
    const PointView pv = g.point(v);
    for (const EdgeId e : inc) {
      const PointView pu = g.point(g.edge(e).other(v));
      const double dx = pu[0] - pv[0];
      const double dy = dim >= 2 ? pu[1] - pv[1] : 0.0;
      order.emplace_back(std::atan2(dy, dx), e);
    }
    std::sort(order.begin(), order.end(), [&](const auto &a, const auto &b) {
      if (a.first != b.first) {
        return a.first < b.first;
      }
      return g.edge(a.second).other(v) < g.edge(b.second).other(v);
    });

    const VertexId first = static_cast<VertexId>(map.backward.size());
    for (const auto &[angle, e] : order) {
      const VertexId id = add_vertex(v);
      slot_of[e][g.edge(e).u == v ? 0 : 1] = id;
    }
    const auto count = static_cast<VertexId>(order.size());
    for (VertexId i = 0; i < count; ++i) {
      edges.push_back({first + i, first + (i + 1) % count, 0.0});
    }
  }

  for (EdgeId e = 0; e < g.m(); ++e) {
    edges.push_back({slot_of[e][0], slot_of[e][1], g.edge(e).w});
  }
  return {EuclideanGraph(dim, std::move(coords), std::move(edges)), std::move(map)};
}

Subgraph induced_subgraph(const EuclideanGraph &g, std::span<const VertexId> vs) {
  const std::size_t dim = g.dim();
  std::vector<VertexId> local(g.n(), kInvalidVertex);
  Subgraph sub;
  sub.to_parent.assign(vs.begin(), vs.end());
  std::vector<double> coords;
  coords.reserve(vs.size() * dim);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const VertexId v = vs[i];
    if (v >= g.n()) {
      throw ContractError("graph", "induced_subgraph: unknown vertex id " + std::to_string(v));
    }
    if (local[v] != kInvalidVertex) {
      throw ContractError("graph", "induced_subgraph: repeated vertex id " + std::to_string(v));
    }
    local[v] = static_cast<VertexId>(i);
    const PointView p = g.point(v);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  std::vector<EdgeId> picked;
  for (const VertexId v : vs) {
    for (const EdgeId e : g.incident(v)) {
      const VertexId u = g.edge(e).other(v);
      if (local[u] != kInvalidVertex && v < u) {
        picked.push_back(e);
      }
    }
  }
  std::sort(picked.begin(), picked.end());
  std::vector<Edge> edges;
  edges.reserve(picked.size());
  for (const EdgeId e : picked) {
    const Edge &pe = g.edge(e);
    edges.push_back({local[pe.u], local[pe.v], pe.w});
  }
  sub.edge_to_parent = std::move(picked);
  sub.graph = EuclideanGraph(dim == 0 ? 1 : dim, std::move(coords), std::move(edges));
  return sub;
}

std::vector<std::vector<VertexId>> connected_components(const EuclideanGraph &g) {
  std::vector<std::vector<VertexId>> components;
  std::vector<bool> visited(g.n(), false);
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < g.n(); ++root) {
    if (visited[root]) {
      continue;
    }
    std::vector<VertexId> comp;
    visited[root] = true;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const EdgeId e : g.incident(v)) {
        const VertexId u = g.edge(e).other(v);
        if (!visited[u]) {
          visited[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

DistanceLabels dijkstra(const EuclideanGraph &g, VertexId s, DijkstraCounters *counters) {
  if (s >= g.n()) {
    throw ContractError("graph", "dijkstra: invalid source " + std::to_string(s));
  }
  DistanceLabels labels;
  labels.dist.assign(g.n(), kInfinity);
  labels.parent.assign(g.n(), kInvalidEdge);
  DijkstraCounters local;
  DijkstraCounters &c = counters != nullptr ? *counters : local;

  using Entry = std::pair<double, VertexId>;
  auto greater = [&c](const Entry &a, const Entry &b) {
    ++c.comparisons;
    return a > b;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> heap(greater);
  std::vector<bool> settled(g.n(), false);

  labels.dist[s] = 0.0;
  heap.emplace(0.0, s);
  ++c.pushes;
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (settled[v]) {
      continue;
    }
    settled[v] = true;
    for (const EdgeId e : g.incident(v)) {
      const Edge &edge = g.edge(e);
      const VertexId u = edge.other(v);
      ++c.relaxations;
      const double nd = d + edge.w;
      if (nd < labels.dist[u]) {
        labels.dist[u] = nd;
        labels.parent[u] = e;
        heap.emplace(nd, u);
        ++c.pushes;
      }
    }
  }
  return labels;
}

DistanceLabels pull_back(const DistanceLabels &labels, const VertexMap &map) {
  DistanceLabels out;
  out.dist.resize(map.forward.size());
  out.parent.assign(map.forward.size(), kInvalidEdge);
  for (VertexId v = 0; v < map.forward.size(); ++v) {
    double best = kInfinity;
    for (const VertexId t : map.forward[v]) {
      best = std::min(best, labels.dist[t]);
    }
    out.dist[v] = best;
  }
  return out;
}

} // namespace geosssp

/*******************************************************************************
 * The Euclidean graph model, the max-degree-3 transform, subgraph extraction,
 * and the Dijkstra oracle.
 *
 * @file:   graph.hpp
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geosssp/geom.hpp"

namespace geosssp {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kInvalidEdge = std::numeric_limits<EdgeId>::max();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Edge {
  VertexId u;
  VertexId v;
  double w;

  [[nodiscard]] VertexId other(VertexId x) const { return x == u ? v : u; }
  bool operator==(const Edge &) const = default;
};

/// Undirected weighted graph whose vertices carry coordinates in R^d.
/// Immutable after construction. No self-loops, no duplicate edges, weights
/// finite and nonnegative.
class EuclideanGraph {
public:
  EuclideanGraph() = default;
  EuclideanGraph(std::size_t dim, std::vector<double> coords, std::vector<Edge> edges);

  /// Builds a graph whose edges are weighted by Euclidean length.
  static EuclideanGraph with_lengths(
      std::size_t dim, std::vector<double> coords,
      const std::vector<std::pair<VertexId, VertexId>> &pairs
  );

  [[nodiscard]] std::size_t dim() const { return _dim; }
  [[nodiscard]] std::size_t n() const { return _dim == 0 ? 0 : _coords.size() / _dim; }
  [[nodiscard]] std::size_t m() const { return _edges.size(); }

  [[nodiscard]] PointView point(VertexId v) const {
    return PointView(_coords).subspan(static_cast<std::size_t>(v) * _dim, _dim);
  }
  [[nodiscard]] const std::vector<double> &coords() const { return _coords; }
  [[nodiscard]] const Edge &edge(EdgeId e) const { return _edges[e]; }
  [[nodiscard]] const std::vector<Edge> &edges() const { return _edges; }

  /// Incident edge ids of v, sorted by edge id.
  [[nodiscard]] std::span<const EdgeId> incident(VertexId v) const {
    return std::span<const EdgeId>(_adj).subspan(_adj_begin[v], _adj_begin[v + 1] - _adj_begin[v]);
  }
  [[nodiscard]] std::size_t degree(VertexId v) const {
    return _adj_begin[v + 1] - _adj_begin[v];
  }
  [[nodiscard]] std::size_t max_degree() const;

  bool operator==(const EuclideanGraph &other) const {
    return _dim == other._dim && _coords == other._coords && _edges == other._edges;
  }

private:
  std::size_t _dim = 0;
  std::vector<double> _coords;
  std::vector<Edge> _edges;
  std::vector<std::size_t> _adj_begin{0};
  std::vector<EdgeId> _adj;
};

/// Tracks the vertex expansion performed by degree3_transform.
struct VertexMap {
  std::vector<std::vector<VertexId>> forward; // original -> transformed ids
  std::vector<VertexId> backward;             // transformed -> original

  static VertexMap identity(std::size_t n);
};

struct DistanceLabels {
  std::vector<double> dist;
  std::vector<EdgeId> parent; // predecessor edge or kInvalidEdge
};

/// Replaces every vertex of degree D > 3 by a zero-weight cycle of D copies,
/// one per incident edge, ordered by angle in the first two coordinates.
std::pair<EuclideanGraph, VertexMap> degree3_transform(const EuclideanGraph &g);

struct Subgraph {
  EuclideanGraph graph;
  std::vector<VertexId> to_parent;  // local vertex -> parent vertex
  std::vector<EdgeId> edge_to_parent; // local edge -> parent edge
};

/// Subgraph on `vs` (in the given order) with all edges of g between them.
Subgraph induced_subgraph(const EuclideanGraph &g, std::span<const VertexId> vs);

/// Vertex sets of connected components, each sorted, ordered by minimum id.
std::vector<std::vector<VertexId>> connected_components(const EuclideanGraph &g);

struct DijkstraCounters {
  std::uint64_t comparisons = 0;
  std::uint64_t relaxations = 0;
  std::uint64_t pushes = 0;
};

/// Binary-heap Dijkstra. Ties are broken by smaller vertex id.
DistanceLabels dijkstra(const EuclideanGraph &g, VertexId s, DijkstraCounters *counters = nullptr);

/// Pulls labels of a transformed graph back to the original vertices.
DistanceLabels pull_back(const DistanceLabels &labels, const VertexMap &map);

} // namespace geosssp

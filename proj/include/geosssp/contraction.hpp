/*******************************************************************************
 * Contraction phase: the parameter schedule, spanning-tree clustering,
 * contracted graphs G_i with their cluster maps, and representative graphs.
 *
 * Level 0 is the input graph itself. Level i+1 is obtained from level i by
 * contracting clusters of about z_i vertices.
 *
 * @file:   contraction.hpp
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "geosssp/graph.hpp"

namespace geosssp {

/// Division constant multiplying the boundary function.
inline constexpr double kBoundaryConstant = 4.0;

struct Schedule {
  std::size_t d = 2;
  std::vector<std::uint64_t> z;
  std::vector<double> alpha;  // prod_{j<=i} z_j
  std::vector<double> beta;   // z_i^{3d-2}
  std::vector<double> r;      // z_i^{3d-1} prod_{j<i} z_j
  std::vector<double> f_of_r; // c' * proxy * z_i^{3d-2} prod_{j<i} z_j
  std::size_t I = 0;          // top contracted graph is G_{I+1}
  double proxy = 1.0;         // measured separator constant
  double c_prime = kBoundaryConstant;

  /// Appends z_{size} and the derived entries.
  void extend();
  /// Recomputes f_of_r from proxy.
  void set_proxy(double value);
};

/// z_0 = 2, z_i = ceil(7^{z_{i-1}^{1/5}}); enough levels that n / alpha_I <= n / log2 n.
Schedule make_schedule(std::size_t n, std::size_t d);

/// Next schedule entry after z.
std::uint64_t next_z(std::uint64_t z);

struct ContractionLevel {
  std::size_t level = 0;
  std::uint64_t z_used = 0; // cluster target used to build this level
  /// Contracted graph. Vertices sit at the first vertex of their conset and
  /// edges carry the weight of their representative; neither is used
  /// geometrically.
  EuclideanGraph graph;
  std::vector<std::vector<VertexId>> cset;   // vertex -> previous-level vertices
  std::vector<std::vector<VertexId>> conset; // vertex -> base vertices, sorted
  std::vector<VertexId> owner;               // base vertex -> vertex of this level
  std::vector<EdgeId> rep_of;                // edge -> base edge
  std::vector<std::pair<VertexId, VertexId>> rep_ends; // endpoints of rep_of
  std::vector<std::vector<VertexId>> gamma;  // vertex -> rep endpoints in its conset
};

/// Spanning-tree clustering of a graph with max degree <= 3. Every set is
/// connected; sizes lie in [z, 3z) except one smaller set per component of
/// fewer than z vertices.
std::vector<std::vector<VertexId>> cluster(const EuclideanGraph &g, std::uint64_t z);

/// Same accumulation without the degree restriction. Sets are connected, at
/// least z in size unless a whole component is smaller, and at most
/// 1 + D (z - 1) + z - 1 where D is the largest spanning-tree degree.
std::vector<std::vector<VertexId>> cluster_any_degree(const EuclideanGraph &g, std::uint64_t z);

/// Level 0: identity maps, rep_of = identity, gamma(v) = {v}.
ContractionLevel base_level(const EuclideanGraph &g);

/// Contracts each cluster of prev.graph into one vertex.
ContractionLevel contract(const ContractionLevel &prev, std::uint64_t z);

/// Fills rep_of and gamma of cur from prev. Each edge takes the
/// representative of the smallest-id crossing edge of prev.
void build_representative(ContractionLevel &cur, const ContractionLevel &prev);

struct Contraction {
  Schedule schedule;
  std::vector<ContractionLevel> levels; // levels[0] = base, back() = G_{I+1}
};

/// Builds levels until the top has at most n / log2 n vertices or stops
/// shrinking. The schedule is extended when more levels are needed.
Contraction contract_all(const EuclideanGraph &g);

} // namespace geosssp

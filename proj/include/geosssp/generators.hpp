/*******************************************************************************
 * Instance generators for the three graph classes and audits of their
 * defining parameters (lankiness, ply, degeneracy).
 *
 * @file:   generators.hpp
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <vector>

#include "geosssp/geom.hpp"
#include "geosssp/graph.hpp"
#include "geosssp/system.hpp"

namespace geosssp {

enum class PointDistribution { uniform_cube, clustered };

/// Deterministic, pairwise distinct points.
std::vector<Point> gen_points(
    std::size_t n, std::size_t d, PointDistribution distribution, std::uint64_t seed
);

/// Above this size greedy_spanner only considers each point's nearest
/// neighbors as candidate edges.
inline constexpr std::size_t kExactSpannerLimit = 2048;

/// Number of nearest-neighbor candidates per point for large inputs.
std::size_t spanner_candidates(std::size_t d);

/// Path-greedy t-spanner with Euclidean edge weights.
EuclideanGraph greedy_spanner(const std::vector<Point> &points, double t);

/// Balls with ply at most k and intersection-graph degeneracy at most k-1.
NeighborhoodSystem gen_kply(std::size_t n, std::size_t d, std::uint32_t k, std::uint64_t seed);

/// Iso-oriented cubes with thickness at most kappa.
NeighborhoodSystem
gen_cubes(std::size_t n, std::size_t d, std::uint32_t kappa, std::uint64_t seed);

/// One vertex per object at its center, an edge per intersecting pair
/// (closed intersection), weighted by center distance.
EuclideanGraph intersection_graph(const NeighborhoodSystem &sys);

/// Lower-bound estimate of the maximum coverage depth.
std::uint32_t audit_ply(const NeighborhoodSystem &sys, std::size_t extra_samples, std::uint64_t seed);

/// Lower-bound estimate of tau: the largest number of edges of length >= r
/// cut by a sampled ball of radius r.
std::uint32_t audit_lanky(const EuclideanGraph &g, std::size_t samples, std::uint64_t seed);

/// Core-decomposition degeneracy.
std::uint32_t degeneracy(const EuclideanGraph &g);

} // namespace geosssp

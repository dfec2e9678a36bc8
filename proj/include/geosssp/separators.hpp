/*******************************************************************************
 * Randomized geometric separators for the three graph classes and a
 * validator shared by all of them.
 *
 * lanky_separator works on a Euclidean graph and cuts with a ball.
 * mttv_separator works on a ball system and cuts with a sphere found through
 * a stereographic lift and a centerpoint. sw_separator works on a cube system
 * and cuts with an axis-aligned cube drawn from a separating annulus.
 *
 * For the system-based separators vertex ids are object ids, i.e. the ids of
 * intersection_graph(sys).
 *
 * @file:   separators.hpp
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geosssp/geom.hpp"
#include "geosssp/graph.hpp"
#include "geosssp/system.hpp"

namespace geosssp {

struct SeparatorCut {
  Surface surface;
  std::vector<std::uint32_t> cut_object_ids; // cut edges (lanky) or objects
  std::vector<VertexId> S;
  std::vector<VertexId> A; // inside the surface
  std::vector<VertexId> B; // outside the surface
  std::uint32_t attempts = 0;
};

struct SeparatorReport {
  std::size_t sep_size = 0;
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  double balance = 0.0; // max(|A|, |B|) / n
  std::size_t cut_count = 0;
  bool valid = false;
  std::string reason;
};

struct LankyParams {
  std::uint32_t tau = 1;
  double eta = 7.0;
  std::size_t d = 2;
  double c_rej = 1.0;
};

/// Packing constant used for Euclidean inputs when none is supplied.
double default_eta(std::size_t d);
LankyParams default_lanky_params(std::size_t d);

/// (d+1)/(d+2) + 0.02.
double default_delta(std::size_t d);
inline constexpr double kDefaultEpsilon = 0.05;

/// Size multiplier of the annulus-search sample.
inline constexpr double kSampleConstant = 1.0;

inline constexpr int kInnerDraws = 20;
inline constexpr int kOuterRestarts = 10;

/// Largest side a lanky cut may leave: (1 - 1/(eta 2^{d+1})) n.
double lanky_balance_bound(const LankyParams &params);
double sw_balance_bound(double eps);

/// Ball cut around a random vertex. Does not require g to be connected.
SeparatorCut lanky_separator(const EuclideanGraph &g, const LankyParams &params, std::uint64_t seed);

/// Approximate delta-centerpoint by iterated Radon points, checked against
/// 1000 random hyperplanes.
Point centerpoint_approx(const std::vector<Point> &points, double delta, std::uint64_t seed);

/// Sphere separator for a ball system. Retries until both open sides hold at
/// most delta * n balls.
SeparatorCut mttv_separator(const NeighborhoodSystem &sys, double delta, std::uint64_t seed);

/// Cube separator for a cube system. Retries until both sides hold at most
/// (2/3 + eps) n cubes.
SeparatorCut sw_separator(const NeighborhoodSystem &sys, double eps, std::uint64_t seed);

/// Checks that no edge joins A and B and that max(|A|, |B|) <= rho * n.
/// Throws when S, A, B do not partition the vertex ids.
SeparatorReport validate_separator(const EuclideanGraph &g, const SeparatorCut &cut, double rho);

} // namespace geosssp

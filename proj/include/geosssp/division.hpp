/*******************************************************************************
 * Division phase: separators of contracted subgraphs through representative
 * graphs, recursive splitting, expansion between levels, the recursive
 * division builder, and its validator.
 *
 * All work happens on the "work graph": the input graph, or its degree-3
 * transform when some vertex has degree above 3. Region ids at level i are
 * vertices of the contracted graph G_i; `members` holds the same region in
 * work-graph ids.
 *
 * @file:   division.hpp
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geosssp/contraction.hpp"
#include "geosssp/graph.hpp"
#include "geosssp/separators.hpp"
#include "geosssp/system.hpp"

namespace geosssp {

enum class GraphClass { lanky, kply, cubes };

const char *class_name(GraphClass c);
GraphClass parse_class(const std::string &name);

/// Multiplier of z^{3d-3} above which an accepted small piece is flagged.
inline constexpr double kPieceBoundaryConstant = 4.0;
/// Constant C of the per-level structural checks.
inline constexpr double kDivisionConstant = 4.0;
/// Retries of the contracted-graph separator on degenerate output.
inline constexpr int kContractedRetries = 10;
/// A connected piece of at most this many times r that neither the class
/// separator nor the BFS-layer fallback splits is accepted as a flagged region.
inline constexpr double kStallFactor = 4.0;

/// Everything the class separator needs besides the subgraph.
struct SeparatorBackend {
  GraphClass cls = GraphClass::lanky;
  const EuclideanGraph *work = nullptr;
  const NeighborhoodSystem *sys = nullptr;           // ball or cube classes
  const std::vector<VertexId> *object_of = nullptr;  // work vertex -> object
  LankyParams lanky;
  double delta = 0.0;
  double eps = kDefaultEpsilon;
};

struct ContractedCut {
  std::vector<VertexId> S; // ids of the level's graph
  std::vector<VertexId> A;
  std::vector<VertexId> B;
  SeparatorCut class_cut;  // cut of the representative subgraph
  std::uint32_t retries = 0;
};

/// Separator of the subgraph of lvl.graph induced by H, computed by running
/// the class separator on the representative subgraph and classifying each
/// vertex of H by the points of its gamma set. Throws if no A-B-edge-free
/// cut is produced within the retry budget.
ContractedCut separator_contracted(
    const std::vector<VertexId> &H, const ContractionLevel &lvl, const SeparatorBackend &backend,
    std::uint64_t seed
);

struct Piece {
  std::vector<VertexId> vertices; // sorted
  std::vector<VertexId> boundary; // sorted, subset of vertices
  bool flagged = false;           // accepted with an oversized boundary
};

struct DivideLog {
  std::vector<std::pair<std::size_t, std::size_t>> calls; // (|H|, |S|) per separator call
  std::size_t retries = 0;
  std::size_t stalled = 0;   // pieces accepted because no cut made progress
  std::size_t fallbacks = 0; // pieces split by BFS layers instead of the class separator
};

/// Splits region R of lvl.graph into pieces of at most r vertices.
/// Disconnected parts are packed without new boundary; connected parts are
/// cut and the separator joins both sides as boundary. When the class
/// separator leaves a side empty, a middle BFS layer is used instead.
std::vector<Piece> divide(
    const std::vector<VertexId> &R, const std::vector<VertexId> &boundary, double r,
    std::uint64_t z, const ContractionLevel &lvl, const SeparatorBackend &backend,
    std::uint64_t seed, DivideLog *log = nullptr
);

/// Replaces each vertex of lvl.graph by its cluster in the level below.
Piece expand(const Piece &piece, const ContractionLevel &lvl);

struct Region {
  std::size_t level = 0;
  std::vector<VertexId> vertices;        // ids of G_level
  std::vector<VertexId> boundary;        // ids of G_level
  std::vector<VertexId> members;         // work-graph ids
  std::vector<VertexId> member_boundary; // work-graph ids
  std::int64_t parent = -1;
  std::vector<std::uint32_t> children;
  bool flagged = false;
};

struct LevelStats {
  std::size_t level = 0;
  std::size_t n_i = 0;
  std::size_t regions = 0;
  std::size_t sum_sizes = 0;
  std::size_t max_size = 0;
  std::size_t max_boundary = 0;
  std::size_t sum_member_sizes = 0;
  std::size_t max_member_size = 0;
  std::size_t max_member_boundary = 0;
  std::size_t flagged = 0;
};

struct DivisionConfig {
  GraphClass cls = GraphClass::lanky;
  const NeighborhoodSystem *sys = nullptr;
  std::uint32_t tau = 1;
  double eta = 0.0;   // 0 selects default_eta(d)
  double delta = 0.0; // 0 selects default_delta(d)
  double eps = kDefaultEpsilon;
  std::uint64_t seed = 1;
};

struct DivisionTree {
  GraphClass cls = GraphClass::lanky;
  EuclideanGraph work;
  VertexMap map;
  bool transformed = false;
  Schedule schedule;
  std::vector<std::size_t> level_sizes; // n_i of each contracted graph
  std::vector<Region> regions;          // regions[0] is the root
  std::vector<LevelStats> stats;        // index = level
  DivideLog log;

  [[nodiscard]] std::size_t top_level() const { return regions.empty() ? 0 : regions[0].level; }
  [[nodiscard]] std::vector<std::uint32_t> leaves() const;
};

/// Full pipeline: optional degree-3 transform, contraction, then division
/// from the top contracted graph down to the work graph.
DivisionTree build_recursive_division(const EuclideanGraph &g, const DivisionConfig &config);

struct LevelCheck {
  std::size_t level = 0;
  std::size_t regions = 0;
  double region_bound = 0.0;
  std::size_t sum_sizes = 0;
  double sum_bound = 0.0;
  std::size_t max_member_size = 0;
  double size_bound = 0.0;
  std::size_t max_member_boundary = 0;
  double boundary_bound = 0.0;
  double margin = 0.0;         // log-space slack of the schedule inequality
  bool margin_applies = false; // r_i above the threshold
  bool ok = true;
};

struct DivisionReport {
  bool valid = true;
  std::vector<LevelCheck> levels;
  bool edges_covered = true;
  bool boundary_consistent = true;
  bool children_cover = true;
  /// First schedule level from which the inequality holds on every later
  /// computable level, and log10 of its r.
  std::size_t threshold_level = 0;
  double threshold_log10_r = 0.0;
  bool threshold_found = false;
  std::vector<std::string> problems;
};

/// Log-space margins of the schedule inequality for levels 0..count-1 of the
/// z recurrence, evaluated with the given boundary constant c' * proxy.
std::vector<double> inequality_margins(std::size_t d, double f_constant, std::size_t count);

DivisionReport validate_division(const DivisionTree &tree);

} // namespace geosssp

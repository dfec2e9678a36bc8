/*******************************************************************************
 * @file:   generators.cpp
 ******************************************************************************/
#include "geosssp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "geosssp/error.hpp"
#include "geosssp/rng.hpp"
#include "kdtree.hpp"

namespace geosssp {

namespace {

constexpr double kSizeFactor = 1.0;
constexpr double kShrink = 0.9;

/// Axis-aligned bounding boxes bucketed into a uniform grid. A point query
/// returns every box whose cell range covers the point's cell (a superset of
/// the boxes containing it).
class BoxGrid {
public:
  BoxGrid(std::size_t dim, const std::vector<double> &lo, const std::vector<double> &hi)
      : _dim(dim), _origin(dim, std::numeric_limits<double>::infinity()) {
    const std::size_t n = dim == 0 ? 0 : lo.size() / dim;
    std::vector<double> extents;
    extents.reserve(n);
    std::vector<double> top(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
      double ext = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        _origin[j] = std::min(_origin[j], lo[i * dim + j]);
        top[j] = std::max(top[j], hi[i * dim + j]);
        ext = std::max(ext, hi[i * dim + j] - lo[i * dim + j]);
      }
      if (ext > 0.0) {
        extents.push_back(ext);
      }
    }
    if (!extents.empty()) {
      std::nth_element(extents.begin(), extents.begin() + extents.size() / 2, extents.end());
      _cell = extents[extents.size() / 2];
    } else {
      double span = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        span = std::max(span, top[j] - _origin[j]);
      }
      _cell = span > 0.0 ? span / std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim))
                         : 1.0;
    }
    _box_cells.resize(n);
    std::vector<std::int64_t> a(dim);
    std::vector<std::int64_t> b(dim);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        a[j] = cell_index(lo[i * dim + j], j);
        b[j] = cell_index(hi[i * dim + j], j);
      }
      for_each_cell(a, b, [&](std::uint64_t key) {
        _cells[key].push_back(i);
        _box_cells[i].push_back(key);
      });
    }
  }

  /// Boxes sharing a cell with box i, with ids > i, each reported once.
  template <typename Fn> void for_each_later_neighbor(std::uint32_t i, Fn &&fn) {
    if (_stamp.size() != _box_cells.size()) {
      _stamp.assign(_box_cells.size(), UINT32_MAX);
    }
    for (const std::uint64_t key : _box_cells[i]) {
      for (const std::uint32_t j : _cells.at(key)) {
        if (j > i && _stamp[j] != i) {
          _stamp[j] = i;
          fn(j);
        }
      }
    }
  }

  [[nodiscard]] const std::vector<std::uint32_t> *candidates(PointView p) const {
    std::vector<std::int64_t> a(_dim);
    for (std::size_t j = 0; j < _dim; ++j) {
      a[j] = cell_index(p[j], j);
    }
    const auto it = _cells.find(hash_cell(a));
    return it == _cells.end() ? nullptr : &it->second;
  }

private:
  std::size_t _dim;
  std::vector<double> _origin;
  double _cell = 1.0;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> _cells;
  std::vector<std::vector<std::uint64_t>> _box_cells;
  std::vector<std::uint32_t> _stamp;

  [[nodiscard]] std::int64_t cell_index(double x, std::size_t j) const {
    return static_cast<std::int64_t>(std::floor((x - _origin[j]) / _cell));
  }

  // Collisions only merge buckets, which callers tolerate.
  static std::uint64_t hash_cell(const std::vector<std::int64_t> &c) {
    std::uint64_t h = 0x243F6A8885A308D3ULL;
    for (const std::int64_t x : c) {
      h = mix_seed(h, static_cast<std::uint64_t>(x));
    }
    return h;
  }

  template <typename Fn>
  void for_each_cell(const std::vector<std::int64_t> &a, const std::vector<std::int64_t> &b, Fn &&fn) {
    std::vector<std::int64_t> c = a;
    for (;;) {
      fn(hash_cell(c));
      std::size_t j = 0;
      while (j < _dim) {
        if (c[j] < b[j]) {
          ++c[j];
          break;
        }
        c[j] = a[j];
        ++j;
      }
      if (j == _dim) {
        return;
      }
    }
  }
};

void system_boxes(const NeighborhoodSystem &sys, std::vector<double> &lo, std::vector<double> &hi) {
  const std::size_t d = sys.dim;
  lo.resize(sys.size() * d);
  hi.resize(sys.size() * d);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (sys.kind == SystemKind::ball) {
        lo[i * d + j] = sys.balls[i].center[j] - sys.balls[i].radius;
        hi[i * d + j] = sys.balls[i].center[j] + sys.balls[i].radius;
      } else {
        lo[i * d + j] = sys.cubes[i].corner[j];
        hi[i * d + j] = sys.cubes[i].corner[j] + sys.cubes[i].side;
      }
    }
  }
}

bool objects_intersect(const NeighborhoodSystem &sys, std::size_t i, std::size_t j) {
  return sys.kind == SystemKind::ball ? balls_intersect(sys.balls[i], sys.balls[j])
                                      : cubes_intersect(sys.cubes[i], sys.cubes[j]);
}

bool object_contains(const NeighborhoodSystem &sys, std::size_t i, PointView p) {
  if (sys.kind == SystemKind::ball) {
    return distance(sys.balls[i].center, p) <= sys.balls[i].radius;
  }
  const Cube &c = sys.cubes[i];
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < c.corner[j] || p[j] > c.corner[j] + c.side) {
      return false;
    }
  }
  return true;
}

double object_size(const NeighborhoodSystem &sys, std::size_t i) {
  return sys.kind == SystemKind::ball ? sys.balls[i].radius : sys.cubes[i].side;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> intersecting_pairs(const NeighborhoodSystem &sys) {
  std::vector<double> lo;
  std::vector<double> hi;
  system_boxes(sys, lo, hi);
  BoxGrid grid(sys.dim, lo, hi);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::uint32_t> found;
  for (std::uint32_t i = 0; i < sys.size(); ++i) {
    found.clear();
    grid.for_each_later_neighbor(i, [&](std::uint32_t j) {
      if (objects_intersect(sys, i, j)) {
        found.push_back(j);
      }
    });
    std::sort(found.begin(), found.end());
    for (const std::uint32_t j : found) {
      pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

std::vector<double> flat_coords(const std::vector<Point> &points) {
  std::vector<double> coords;
  for (const Point &p : points) {
    coords.insert(coords.end(), p.coords().begin(), p.coords().end());
  }
  return coords;
}

/// Distance from each point to its m-th nearest other point (or to the
/// farthest one when fewer exist).
std::vector<double> mth_neighbor_distance(const std::vector<Point> &centers, std::size_t m) {
  const std::vector<double> coords = flat_coords(centers);
  const std::size_t d = centers.empty() ? 1 : centers[0].dim();
  detail::KdTree tree(coords, d);
  std::vector<double> out(centers.size(), 0.0);
  for (std::uint32_t i = 0; i < centers.size(); ++i) {
    const auto nn = tree.nearest(&coords[i * d], m, i);
    out[i] = nn.empty() ? 0.0 : std::sqrt(nn.back().first);
  }
  return out;
}

/// Shrinks objects until none intersects more than k-1 objects that precede
/// it in (size, id) order. Any point covered by the objects is then covered
/// by at most k of them: the largest one covering it meets all others.
void repair_ply(NeighborhoodSystem &sys, std::uint32_t k) {
  for (;;) {
    const auto pairs = intersecting_pairs(sys);
    std::vector<std::uint32_t> smaller(sys.size(), 0);
    for (const auto &[i, j] : pairs) {
      const auto key_i = std::make_pair(object_size(sys, i), i);
      const auto key_j = std::make_pair(object_size(sys, j), j);
      ++smaller[key_j < key_i ? i : j];
    }
    bool changed = false;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      if (smaller[i] + 1 > k) {
        changed = true;
        if (sys.kind == SystemKind::ball) {
          sys.balls[i].radius *= kShrink;
        } else {
          // Shrink about the center.
          Cube &c = sys.cubes[i];
          const double delta = 0.5 * c.side * (1.0 - kShrink);
          std::vector<double> corner = c.corner.coords();
          for (double &x : corner) {
            x += delta;
          }
          c = make_cube(Point(std::move(corner)), c.side * kShrink);
        }
      }
    }
    if (!changed) {
      return;
    }
  }
}

NeighborhoodSystem gen_system(
    SystemKind kind, std::size_t n, std::size_t d, std::uint32_t ply, std::uint64_t seed
) {
  if (n == 0 || d == 0 || ply == 0) {
    throw ContractError("generators", "n, d and the ply must be positive");
  }
  const std::vector<Point> centers = gen_points(n, d, PointDistribution::uniform_cube, seed);
  const std::vector<double> nn = mth_neighbor_distance(centers, ply);
  Rng rng(mix_seed(seed, 0x5157));
  NeighborhoodSystem sys;
  sys.kind = kind;
  sys.dim = d;
  sys.declared_ply = ply;
  for (std::size_t i = 0; i < n; ++i) {
    const double base = n == 1 ? 0.1 : nn[i];
    const double size = kSizeFactor * rng.uniform(0.5, 1.0) * base;
    if (kind == SystemKind::ball) {
      sys.balls.push_back(make_ball(centers[i], size));
    } else {
      const double side = 2.0 * size;
      std::vector<double> corner = centers[i].coords();
      for (double &x : corner) {
        x -= 0.5 * side;
      }
      sys.cubes.push_back(make_cube(Point(std::move(corner)), side));
    }
  }
  repair_ply(sys, ply);
  return sys;
}

} // namespace

std::vector<Point> gen_points(
    std::size_t n, std::size_t d, PointDistribution distribution, std::uint64_t seed
) {
  if (n == 0 || d == 0) {
    throw ContractError("generators", "gen_points requires n >= 1 and d >= 1");
  }
  Rng rng(seed);
  std::vector<Point> cluster_centers;
  if (distribution == PointDistribution::clustered) {
    const std::size_t count = std::max<std::size_t>(1, n / 100);
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<double> x(d);
      for (double &v : x) {
        v = rng.uniform();
      }
      cluster_centers.emplace_back(std::move(x));
    }
  }
  auto draw = [&]() {
    std::vector<double> x(d);
    if (distribution == PointDistribution::uniform_cube) {
      for (double &v : x) {
        v = rng.uniform();
      }
    } else {
      const Point &c = cluster_centers[rng.below(cluster_centers.size())];
      for (std::size_t j = 0; j < d; ++j) {
        x[j] = c[j] + 0.03 * rng.normal();
      }
    }
    return Point(std::move(x));
  };
  std::vector<Point> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(draw());
  }
  // Redraw exact duplicates (later index) until all points are distinct.
  for (;;) {
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return points[a].coords() != points[b].coords() ? points[a].coords() < points[b].coords()
                                                      : a < b;
    });
    bool clean = true;
    for (std::size_t i = 1; i < n; ++i) {
      if (points[order[i]] == points[order[i - 1]]) {
        points[order[i]] = draw();
        clean = false;
      }
    }
    if (clean) {
      return points;
    }
  }
}

std::size_t spanner_candidates(std::size_t d) {
  switch (d) {
  case 1:
    return 4;
  case 2:
    return 16;
  case 3:
    return 32;
  default:
    return 8 * d;
  }
}

EuclideanGraph greedy_spanner(const std::vector<Point> &points, double t) {
  if (!(t > 1.0)) {
    throw ContractError("generators", "spanner stretch must exceed 1");
  }
  const std::size_t n = points.size();
  const std::size_t d = n == 0 ? 1 : points[0].dim();
  std::vector<double> coords = flat_coords(points);

  struct Candidate {
    double len;
    std::uint32_t i;
    std::uint32_t j;
    bool operator<(const Candidate &o) const {
      return len != o.len ? len < o.len : (i != o.i ? i < o.i : j < o.j);
    }
  };
  std::vector<Candidate> candidates;
  const bool exact = n <= kExactSpannerLimit;
  if (exact) {
    candidates.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        candidates.push_back({distance(points[i], points[j]), i, j});
      }
    }
  } else {
    detail::KdTree tree(coords, d);
    const std::size_t k = std::min(spanner_candidates(d), n - 1);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (const auto &[d2, j] : tree.nearest(&coords[i * d], k, i)) {
        const std::uint32_t a = std::min(i, j);
        const std::uint32_t b = std::max(i, j);
        candidates.push_back({distance(points[a], points[b]), a, b});
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(
        std::unique(
            candidates.begin(), candidates.end(),
            [](const Candidate &x, const Candidate &y) { return x.i == y.i && x.j == y.j; }
        ),
        candidates.end()
    );
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  std::vector<std::pair<VertexId, VertexId>> chosen;
  std::vector<double> dist(n, kInfinity);
  std::vector<std::uint32_t> touched;
  using Entry = std::pair<double, std::uint32_t>;

  // Dijkstra from s that stops once every vertex within `limit` is settled or
  // `target` is settled. Leaves dist[] filled for touched vertices.
  auto search = [&](std::uint32_t s, std::uint32_t target, double limit) {
    for (const std::uint32_t v : touched) {
      dist[v] = kInfinity;
    }
    touched.clear();
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[s] = 0.0;
    touched.push_back(s);
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [dv, v] = heap.top();
      heap.pop();
      if (dv > dist[v]) {
        continue;
      }
      if (v == target || dv > limit) {
        return;
      }
      for (const auto &[u, w] : adj[v]) {
        const double nd = dv + w;
        if (nd < dist[u] && nd <= limit) {
          if (dist[u] == kInfinity) {
            touched.push_back(u);
          }
          dist[u] = nd;
          heap.emplace(nd, u);
        }
      }
    }
  };

  if (exact) {
    // Upper bounds on current graph distances; a pair is skipped without a
    // search when its bound already certifies the stretch.
    std::vector<double> bound(n * n, kInfinity);
    for (std::size_t v = 0; v < n; ++v) {
      bound[v * n + v] = 0.0;
    }
    for (const Candidate &c : candidates) {
      const double limit = t * c.len;
      if (bound[c.i * n + c.j] <= limit) {
        continue;
      }
      search(c.i, UINT32_MAX, kInfinity);
      for (const std::uint32_t v : touched) {
        bound[c.i * n + v] = std::min(bound[c.i * n + v], dist[v]);
        bound[v * n + c.i] = bound[c.i * n + v];
      }
      if (bound[c.i * n + c.j] <= limit) {
        continue;
      }
      adj[c.i].emplace_back(c.j, c.len);
      adj[c.j].emplace_back(c.i, c.len);
      chosen.emplace_back(c.i, c.j);
      bound[c.i * n + c.j] = bound[c.j * n + c.i] = c.len;
    }
  } else {
    for (const Candidate &c : candidates) {
      const double limit = t * c.len;
      search(c.i, c.j, limit);
      if (dist[c.j] <= limit) {
        continue;
      }
      adj[c.i].emplace_back(c.j, c.len);
      adj[c.j].emplace_back(c.i, c.len);
      chosen.emplace_back(c.i, c.j);
    }
  }
  return EuclideanGraph::with_lengths(d, std::move(coords), chosen);
}

NeighborhoodSystem gen_kply(std::size_t n, std::size_t d, std::uint32_t k, std::uint64_t seed) {
  return gen_system(SystemKind::ball, n, d, k, seed);
}

NeighborhoodSystem
gen_cubes(std::size_t n, std::size_t d, std::uint32_t kappa, std::uint64_t seed) {
  return gen_system(SystemKind::cube, n, d, kappa, seed);
}

EuclideanGraph intersection_graph(const NeighborhoodSystem &sys) {
  const std::size_t d = sys.dim;
  std::vector<double> coords;
  coords.reserve(sys.size() * d);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const Point c = sys.center(i);
    coords.insert(coords.end(), c.coords().begin(), c.coords().end());
  }
  return EuclideanGraph::with_lengths(d, std::move(coords), intersecting_pairs(sys));
}

std::uint32_t audit_ply(const NeighborhoodSystem &sys, std::size_t extra_samples, std::uint64_t seed) {
  if (sys.size() == 0) {
    return 0;
  }
  const std::size_t d = sys.dim;
  std::vector<double> lo;
  std::vector<double> hi;
  system_boxes(sys, lo, hi);
  const BoxGrid grid(d, lo, hi);

  std::uint32_t best = 0;
  auto probe = [&](PointView p) {
    const auto *cands = grid.candidates(p);
    if (cands == nullptr) {
      return;
    }
    std::uint32_t depth = 0;
    for (const std::uint32_t i : *cands) {
      if (object_contains(sys, i, p)) {
        ++depth;
      }
    }
    best = std::max(best, depth);
  };

  for (std::size_t i = 0; i < sys.size(); ++i) {
    probe(sys.center(i));
  }
  std::vector<double> w(d);
  for (const auto &[i, j] : intersecting_pairs(sys)) {
    if (sys.kind == SystemKind::ball) {
      const Ball &a = sys.balls[i];
      const Ball &b = sys.balls[j];
      const double dist = distance(a.center, b.center);
      if (dist == 0.0) {
        probe(a.center);
        continue;
      }
      const double from = std::max(-a.radius, dist - b.radius);
      const double to = std::min(a.radius, dist + b.radius);
      const double s = 0.5 * (from + to) / dist;
      for (std::size_t c = 0; c < d; ++c) {
        w[c] = a.center[c] + s * (b.center[c] - a.center[c]);
      }
    } else {
      const Cube &a = sys.cubes[i];
      const Cube &b = sys.cubes[j];
      for (std::size_t c = 0; c < d; ++c) {
        const double l = std::max(a.corner[c], b.corner[c]);
        const double h = std::min(a.corner[c] + a.side, b.corner[c] + b.side);
        w[c] = 0.5 * (l + h);
      }
    }
    probe(w);
  }
  Rng rng(seed);
  std::vector<double> box_lo(d, kInfinity);
  std::vector<double> box_hi(d, -kInfinity);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      box_lo[c] = std::min(box_lo[c], lo[i * d + c]);
      box_hi[c] = std::max(box_hi[c], hi[i * d + c]);
    }
  }
  for (std::size_t s = 0; s < extra_samples; ++s) {
    for (std::size_t c = 0; c < d; ++c) {
      w[c] = rng.uniform(box_lo[c], box_hi[c]);
    }
    probe(w);
  }
  return best;
}

std::uint32_t audit_lanky(const EuclideanGraph &g, std::size_t samples, std::uint64_t seed) {
  if (g.m() == 0) {
    return 0;
  }
  const std::size_t d = g.dim();
  std::vector<double> lengths(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    lengths[e] = distance(g.point(g.edge(e).u), g.point(g.edge(e).v));
  }
  std::vector<double> box_lo(d, kInfinity);
  std::vector<double> box_hi(d, -kInfinity);
  for (VertexId v = 0; v < g.n(); ++v) {
    for (std::size_t c = 0; c < d; ++c) {
      box_lo[c] = std::min(box_lo[c], g.point(v)[c]);
      box_hi[c] = std::max(box_hi[c], g.point(v)[c]);
    }
  }
  const detail::KdTree tree(g.coords(), d);
  Rng rng(seed);
  std::vector<bool> inside(g.n(), false);
  std::vector<std::uint32_t> hits;
  std::vector<double> center(d);
  std::uint32_t best = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    if (s % 2 == 0) {
      const PointView p = g.point(static_cast<VertexId>(rng.below(g.n())));
      std::copy(p.begin(), p.end(), center.begin());
    } else {
      for (std::size_t c = 0; c < d; ++c) {
        center[c] = rng.uniform(box_lo[c], box_hi[c]);
      }
    }
    const double r = lengths[rng.below(g.m())];
    hits.clear();
    tree.within(center.data(), r * r, hits);
    for (const std::uint32_t v : hits) {
      inside[v] = true;
    }
    std::uint32_t cut = 0;
    for (const std::uint32_t v : hits) {
      for (const EdgeId e : g.incident(v)) {
        if (!inside[g.edge(e).other(v)] && lengths[e] >= r) {
          ++cut;
        }
      }
    }
    for (const std::uint32_t v : hits) {
      inside[v] = false;
    }
    best = std::max(best, cut);
  }
  return best;
}

std::uint32_t degeneracy(const EuclideanGraph &g) {
  const std::size_t n = g.n();
  if (n == 0) {
    return 0;
  }
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Bucket queue keyed by current degree.
  std::vector<std::vector<VertexId>> buckets(max_deg + 1);
  for (VertexId v = 0; v < n; ++v) {
    buckets[deg[v]].push_back(v);
  }
  std::vector<bool> removed(n, false);
  std::size_t result = 0;
  std::size_t current = 0;
  for (std::size_t done = 0; done < n;) {
    current = 0;
    while (buckets[current].empty()) {
      ++current;
    }
    const VertexId v = buckets[current].back();
    buckets[current].pop_back();
    if (removed[v] || deg[v] != current) {
      continue;
    }
    removed[v] = true;
    ++done;
    result = std::max(result, current);
    for (const EdgeId e : g.incident(v)) {
      const VertexId u = g.edge(e).other(v);
      if (!removed[u]) {
        --deg[u];
        buckets[deg[u]].push_back(u);
      }
    }
  }
  return static_cast<std::uint32_t>(result);
}

} // namespace geosssp

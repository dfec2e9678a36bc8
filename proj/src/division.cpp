/*******************************************************************************
 * @file:   division.cpp
 ******************************************************************************/
#include "geosssp/division.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "geosssp/error.hpp"
#include "geosssp/rng.hpp"

namespace geosssp {

const char *class_name(GraphClass c) {
  switch (c) {
  case GraphClass::lanky:
    return "lanky";
  case GraphClass::kply:
    return "kply";
  case GraphClass::cubes:
    return "cubes";
  }
  return "?";
}

GraphClass parse_class(const std::string &name) {
  if (name == "lanky") {
    return GraphClass::lanky;
  }
  if (name == "kply") {
    return GraphClass::kply;
  }
  if (name == "cubes") {
    return GraphClass::cubes;
  }
  throw ConfigError("unknown graph class '" + name + "' (expected lanky, kply or cubes)");
}

namespace {

enum Side : std::uint8_t { kNone = 0, kSep = 1, kInside = 2, kOutside = 3 };

/// Epoch-stamped scratch arrays shared by all calls on one level.
struct Scratch {
  std::vector<std::uint32_t> level_mark; // vertex of G_i -> epoch
  std::vector<std::uint8_t> level_side;
  std::vector<std::uint32_t> work_mark; // work vertex -> epoch
  std::vector<VertexId> work_local;
  std::uint32_t epoch = 0;

  Scratch(std::size_t level_n, std::size_t work_n)
      : level_mark(level_n, 0), level_side(level_n, kNone), work_mark(work_n, 0),
        work_local(work_n, kInvalidVertex) {}

  std::uint32_t next() {
    if (++epoch == 0) {
      std::fill(level_mark.begin(), level_mark.end(), 0);
      std::fill(work_mark.begin(), work_mark.end(), 0);
      epoch = 1;
    }
    return epoch;
  }
};

VertexId object_of(const SeparatorBackend &b, VertexId x) {
  return b.object_of == nullptr ? x : (*b.object_of)[x];
}

/// Side of work vertex x: where its point (or its object's center) lies.
Side classify_point(const SeparatorBackend &b, const Surface &surface, VertexId x) {
  const bool inside = b.cls == GraphClass::lanky
                          ? surface_contains(surface, b.work->point(x))
                          : surface_contains(surface, b.sys->center(object_of(b, x)));
  return inside ? kInside : kOutside;
}

ContractedCut separator_once(
    const std::vector<VertexId> &H, const ContractionLevel &lvl, const SeparatorBackend &b,
    std::uint64_t seed, Scratch &sc
) {
  const EuclideanGraph &G = lvl.graph;
  const std::uint32_t hm = sc.next();
  for (const VertexId v : H) {
    sc.level_mark[v] = hm;
    sc.level_side[v] = kNone;
  }
  // Representative subgraph RH, in local ids.
  std::vector<VertexId> rh;
  std::vector<Edge> rh_edges;
  std::vector<std::pair<VertexId, VertexId>> rh_pairs;
  auto local = [&](VertexId x) {
    if (sc.work_mark[x] != hm) {
      sc.work_mark[x] = hm;
      sc.work_local[x] = static_cast<VertexId>(rh.size());
      rh.push_back(x);
    }
    return sc.work_local[x];
  };
  for (const VertexId v : H) {
    for (const EdgeId e : G.incident(v)) {
      const VertexId u = G.edge(e).other(v);
      if (sc.level_mark[u] == hm && v < u) {
        const auto [x, y] = lvl.rep_ends[e];
        const VertexId lx = local(x);
        const VertexId ly = local(y);
        rh_edges.push_back({lx, ly, b.work->edge(lvl.rep_of[e]).w});
        rh_pairs.emplace_back(x, y);
      }
    }
  }
  if (rh.empty()) {
    throw ContractError("division", "separator_contracted: subgraph has no edges");
  }

  ContractedCut out;
  std::vector<VertexId> anchors; // work vertices whose owners join S
  if (b.cls == GraphClass::lanky) {
    std::vector<double> coords;
    coords.reserve(rh.size() * b.work->dim());
    for (const VertexId x : rh) {
      const PointView p = b.work->point(x);
      coords.insert(coords.end(), p.begin(), p.end());
    }
    const EuclideanGraph rg(b.work->dim(), std::move(coords), std::move(rh_edges));
    out.class_cut = lanky_separator(rg, b.lanky, seed);
    for (const std::uint32_t e : out.class_cut.cut_object_ids) {
      anchors.push_back(rh[rg.edge(e).u]);
      anchors.push_back(rh[rg.edge(e).v]);
    }
  } else {
    std::vector<std::uint32_t> objects;
    objects.reserve(rh.size());
    for (const VertexId x : rh) {
      objects.push_back(object_of(b, x));
    }
    std::sort(objects.begin(), objects.end());
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
    const NeighborhoodSystem sub = b.sys->select(objects);
    out.class_cut = b.cls == GraphClass::kply ? mttv_separator(sub, b.delta, seed)
                                              : sw_separator(sub, b.eps, seed);
    // Anchors: on each representative edge whose endpoints lie on different
    // sides, the endpoints whose objects the surface cuts.
    std::vector<std::uint32_t> cut_objects;
    for (const std::uint32_t o : out.class_cut.cut_object_ids) {
      cut_objects.push_back(objects[o]);
    }
    std::sort(cut_objects.begin(), cut_objects.end());
    auto is_cut = [&](VertexId x) {
      return std::binary_search(cut_objects.begin(), cut_objects.end(), object_of(b, x));
    };
    for (const auto &[x, y] : rh_pairs) {
      if (classify_point(b, out.class_cut.surface, x) == classify_point(b, out.class_cut.surface, y)) {
        continue;
      }
      if (is_cut(x)) {
        anchors.push_back(x);
      }
      if (is_cut(y)) {
        anchors.push_back(y);
      }
    }
  }

  // Cut objects put their owners in S.
  for (const VertexId x : anchors) {
    const VertexId v = lvl.owner[x];
    if (sc.level_mark[v] == hm) {
      sc.level_side[v] = kSep;
    }
  }
  // Remaining vertices follow their gamma points; mixed ones join S.
  for (const VertexId v : H) {
    if (sc.level_side[v] == kSep) {
      continue;
    }
    bool in = false;
    bool outside = false;
    bool any = false;
    for (const VertexId x : lvl.gamma[v]) {
      if (sc.work_mark[x] != hm) {
        continue;
      }
      any = true;
      const Side s = classify_point(b, out.class_cut.surface, x);
      in |= s == kInside;
      outside |= s == kOutside;
    }
    if (!any) {
      const Side s = classify_point(b, out.class_cut.surface, lvl.conset[v].front());
      in = s == kInside;
      outside = s == kOutside;
    }
    sc.level_side[v] = (in && outside) ? kSep : (in ? kInside : kOutside);
  }
  for (const VertexId v : H) {
    switch (sc.level_side[v]) {
    case kSep:
      out.S.push_back(v);
      break;
    case kInside:
      out.A.push_back(v);
      break;
    default:
      out.B.push_back(v);
    }
  }
  std::sort(out.S.begin(), out.S.end());
  std::sort(out.A.begin(), out.A.end());
  std::sort(out.B.begin(), out.B.end());
  return out;
}

bool has_ab_edge(const ContractedCut &cut, const ContractionLevel &lvl, Scratch &sc) {
  const std::uint32_t m = sc.next();
  for (const VertexId v : cut.B) {
    sc.level_mark[v] = m;
  }
  for (const VertexId v : cut.A) {
    for (const EdgeId e : lvl.graph.incident(v)) {
      if (sc.level_mark[lvl.graph.edge(e).other(v)] == m) {
        return true;
      }
    }
  }
  return false;
}

ContractedCut separator_checked(
    const std::vector<VertexId> &H, const ContractionLevel &lvl, const SeparatorBackend &b,
    std::uint64_t seed, Scratch &sc
) {
  for (int attempt = 0; attempt < kContractedRetries; ++attempt) {
    ContractedCut cut = separator_once(H, lvl, b, mix_seed(seed, attempt), sc);
    cut.retries = static_cast<std::uint32_t>(attempt);
    if (!has_ab_edge(cut, lvl, sc)) {
      return cut;
    }
  }
  throw ContractError(
      "division", "separator_contracted: every attempt left an A-B edge (|H|=" +
                      std::to_string(H.size()) + ", level " + std::to_string(lvl.level) + ")"
  );
}

std::vector<std::vector<VertexId>> piece_components(
    const std::vector<VertexId> &P, const EuclideanGraph &G, Scratch &sc
) {
  const std::uint32_t in = sc.next();
  for (const VertexId v : P) {
    sc.level_mark[v] = in;
  }
  const std::uint32_t seen = sc.next();
  std::vector<std::vector<VertexId>> comps;
  std::vector<VertexId> stack;
  for (const VertexId root : P) {
    if (sc.level_mark[root] == seen) {
      continue;
    }
    std::vector<VertexId> comp;
    sc.level_mark[root] = seen;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const EdgeId e : G.incident(v)) {
        const VertexId u = G.edge(e).other(v);
        if (sc.level_mark[u] == in) {
          sc.level_mark[u] = seen;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

/// Middle BFS layer of a connected piece, started from a far vertex.
/// Layers before it form A, layers after it B. Leaves A or B empty when the
/// piece has diameter below 2.
ContractedCut bfs_layer_cut(const std::vector<VertexId> &P, const EuclideanGraph &G, Scratch &sc) {
  std::vector<std::vector<VertexId>> layers;
  auto bfs = [&](VertexId root) {
    const std::uint32_t in = sc.next();
    for (const VertexId v : P) {
      sc.level_mark[v] = in;
    }
    const std::uint32_t seen = sc.next();
    layers.assign(1, {root});
    sc.level_mark[root] = seen;
    while (true) {
      std::vector<VertexId> next;
      for (const VertexId v : layers.back()) {
        for (const EdgeId e : G.incident(v)) {
          const VertexId u = G.edge(e).other(v);
          if (sc.level_mark[u] == in) {
            sc.level_mark[u] = seen;
            next.push_back(u);
          }
        }
      }
      if (next.empty()) {
        break;
      }
      layers.push_back(std::move(next));
    }
  };
  bfs(P.front());
  bfs(*std::min_element(layers.back().begin(), layers.back().end()));
  ContractedCut cut;
  if (layers.size() < 3) {
    return cut;
  }
  std::size_t j = 1;
  std::size_t before = layers[0].size();
  while (j + 2 < layers.size() && 2 * (before + layers[j].size()) < P.size()) {
    before += layers[j].size();
    ++j;
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    auto &side = i < j ? cut.A : (i == j ? cut.S : cut.B);
    side.insert(side.end(), layers[i].begin(), layers[i].end());
  }
  std::sort(cut.S.begin(), cut.S.end());
  std::sort(cut.A.begin(), cut.A.end());
  std::sort(cut.B.begin(), cut.B.end());
  return cut;
}

std::vector<VertexId> intersect(const std::vector<VertexId> &a, const std::vector<VertexId> &b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<VertexId> unite(const std::vector<VertexId> &a, const std::vector<VertexId> &b) {
  std::vector<VertexId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Greedily merges pieces that share vertices while the union stays within
/// r, then recomputes boundaries from the remaining overlaps.
std::vector<Piece> merge_pieces(
    std::vector<Piece> pieces, const std::vector<VertexId> &inherited, double r, double piece_bound
) {
  std::unordered_map<VertexId, std::vector<std::uint32_t>> holders;
  for (std::uint32_t i = 0; i < pieces.size(); ++i) {
    for (const VertexId v : pieces[i].boundary) {
      holders[v].push_back(i);
    }
  }
  std::vector<bool> alive(pieces.size(), true);
  std::unordered_map<std::uint32_t, std::size_t> overlap;
  for (std::uint32_t i = 0; i < pieces.size(); ++i) {
    bool merged = true;
    while (merged && alive[i]) {
      merged = false;
      overlap.clear();
      for (const VertexId v : pieces[i].boundary) {
        const auto it = holders.find(v);
        if (it == holders.end()) {
          continue;
        }
        for (const std::uint32_t q : it->second) {
          if (q != i && alive[q]) {
            ++overlap[q];
          }
        }
      }
      std::vector<std::pair<std::size_t, std::uint32_t>> order;
      for (const auto &[q, c] : overlap) {
        order.emplace_back(c, q);
      }
      std::sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      for (const auto &[c, q] : order) {
        const std::size_t size = pieces[i].vertices.size() + pieces[q].vertices.size() - c;
        if (static_cast<double>(size) > r) {
          continue;
        }
        pieces[i].vertices = unite(pieces[i].vertices, pieces[q].vertices);
        pieces[i].boundary = unite(pieces[i].boundary, pieces[q].boundary);
        for (const VertexId v : pieces[q].boundary) {
          auto &h = holders[v];
          std::replace(h.begin(), h.end(), q, i);
          std::sort(h.begin(), h.end());
          h.erase(std::unique(h.begin(), h.end()), h.end());
        }
        alive[q] = false;
        merged = true;
        break;
      }
    }
  }
  std::vector<Piece> out;
  for (std::uint32_t i = 0; i < pieces.size(); ++i) {
    if (!alive[i]) {
      continue;
    }
    Piece p = std::move(pieces[i]);
    std::vector<VertexId> boundary;
    for (const VertexId v : p.boundary) {
      const auto it = holders.find(v);
      const bool shared = it != holders.end() && it->second.size() >= 2;
      if (shared || std::binary_search(inherited.begin(), inherited.end(), v)) {
        boundary.push_back(v);
      }
    }
    p.boundary = std::move(boundary);
    p.flagged = static_cast<double>(p.vertices.size()) > r ||
                static_cast<double>(p.boundary.size()) > piece_bound;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Piece> divide_impl(
    const std::vector<VertexId> &R, const std::vector<VertexId> &boundary, double r,
    std::uint64_t z, const ContractionLevel &lvl, const SeparatorBackend &b, std::uint64_t seed,
    DivideLog *log, Scratch &sc
) {
  const double d = static_cast<double>(b.work->dim() < 2 ? 2 : b.work->dim());
  const double piece_bound = kPieceBoundaryConstant * std::pow(static_cast<double>(z), 3.0 * d - 3.0);
  std::vector<Piece> out;
  std::vector<Piece> stack;
  std::vector<VertexId> inherited;
  {
    Piece root;
    root.vertices = R;
    std::sort(root.vertices.begin(), root.vertices.end());
    root.boundary = intersect(root.vertices, [&] {
      std::vector<VertexId> s = boundary;
      std::sort(s.begin(), s.end());
      return s;
    }());
    inherited = root.boundary;
    stack.push_back(std::move(root));
  }
  auto emit = [&](Piece p) {
    p.flagged = static_cast<double>(p.boundary.size()) > piece_bound;
    out.push_back(std::move(p));
  };
  std::uint64_t call = 0;
  while (!stack.empty()) {
    Piece p = std::move(stack.back());
    stack.pop_back();
    if (static_cast<double>(p.vertices.size()) <= r) {
      emit(std::move(p));
      continue;
    }
    auto comps = piece_components(p.vertices, lvl.graph, sc);
    if (comps.size() > 1) {
      std::stable_sort(comps.begin(), comps.end(), [](const auto &x, const auto &y) {
        return x.size() > y.size();
      });
      // First-fit packing of small components; no new boundary arises.
      std::vector<std::vector<VertexId>> bins;
      std::vector<Piece> big;
      for (auto &c : comps) {
        if (static_cast<double>(c.size()) > r) {
          Piece q;
          q.boundary = intersect(c, p.boundary);
          q.vertices = std::move(c);
          big.push_back(std::move(q));
          continue;
        }
        bool placed = false;
        for (auto &bin : bins) {
          if (static_cast<double>(bin.size() + c.size()) <= r) {
            bin.insert(bin.end(), c.begin(), c.end());
            placed = true;
            break;
          }
        }
        if (!placed) {
          bins.push_back(std::move(c));
        }
      }
      for (auto &bin : bins) {
        std::sort(bin.begin(), bin.end());
        Piece q;
        q.boundary = intersect(bin, p.boundary);
        q.vertices = std::move(bin);
        emit(std::move(q));
      }
      for (auto it = big.rbegin(); it != big.rend(); ++it) {
        stack.push_back(std::move(*it));
      }
      continue;
    }
    ContractedCut cut;
    bool progress = false;
    for (int attempt = 0; attempt < kContractedRetries && !progress; ++attempt) {
      try {
        cut = separator_checked(p.vertices, lvl, b, mix_seed(seed, call++), sc);
      } catch (const ContractError &) {
        break;
      }
      progress = !cut.A.empty() && !cut.B.empty();
      if (log != nullptr && !progress) {
        ++log->retries;
      }
    }
    bool fallback = false;
    if (!progress) {
      cut = bfs_layer_cut(p.vertices, lvl.graph, sc);
      progress = fallback = !cut.A.empty() && !cut.B.empty();
    }
    if (!progress && static_cast<double>(p.vertices.size()) <= kStallFactor * r) {
      if (log != nullptr) {
        ++log->stalled;
      }
      p.flagged = true;
      out.push_back(std::move(p));
      continue;
    }
    if (!progress) {
      throw ContractError(
          "division", "divide: separator made no progress on a piece of " +
                          std::to_string(p.vertices.size()) + " vertices at level " +
                          std::to_string(lvl.level)
      );
    }
    if (log != nullptr && fallback) {
      ++log->fallbacks;
    } else if (log != nullptr) {
      log->calls.emplace_back(p.vertices.size(), cut.S.size());
      log->retries += cut.retries;
    }
    Piece a;
    a.vertices = unite(cut.A, cut.S);
    a.boundary = unite(intersect(a.vertices, p.boundary), cut.S);
    Piece bside;
    bside.vertices = unite(cut.B, cut.S);
    bside.boundary = unite(intersect(bside.vertices, p.boundary), cut.S);
    stack.push_back(std::move(bside));
    stack.push_back(std::move(a));
  }
  return merge_pieces(std::move(out), inherited, r, piece_bound);
}

double log_sum_exp(const std::vector<double> &xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (const double x : xs) {
    m = std::max(m, x);
  }
  if (!std::isfinite(m)) {
    return m;
  }
  double s = 0.0;
  for (const double x : xs) {
    s += std::exp(x - m);
  }
  return m + std::log(s);
}

} // namespace

ContractedCut separator_contracted(
    const std::vector<VertexId> &H, const ContractionLevel &lvl, const SeparatorBackend &backend,
    std::uint64_t seed
) {
  Scratch sc(lvl.graph.n(), backend.work->n());
  return separator_checked(H, lvl, backend, seed, sc);
}

std::vector<Piece> divide(
    const std::vector<VertexId> &R, const std::vector<VertexId> &boundary, double r,
    std::uint64_t z, const ContractionLevel &lvl, const SeparatorBackend &backend,
    std::uint64_t seed, DivideLog *log
) {
  Scratch sc(lvl.graph.n(), backend.work->n());
  return divide_impl(R, boundary, r, z, lvl, backend, seed, log, sc);
}

Piece expand(const Piece &piece, const ContractionLevel &lvl) {
  Piece out;
  out.flagged = piece.flagged;
  for (const VertexId v : piece.vertices) {
    out.vertices.insert(out.vertices.end(), lvl.cset[v].begin(), lvl.cset[v].end());
  }
  for (const VertexId v : piece.boundary) {
    out.boundary.insert(out.boundary.end(), lvl.cset[v].begin(), lvl.cset[v].end());
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  std::sort(out.boundary.begin(), out.boundary.end());
  return out;
}

std::vector<std::uint32_t> DivisionTree::leaves() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < regions.size(); ++i) {
    if (regions[i].children.empty()) {
      out.push_back(i);
    }
  }
  return out;
}

namespace {

std::vector<VertexId> to_members(const std::vector<VertexId> &ids, const ContractionLevel &lvl) {
  std::vector<VertexId> out;
  for (const VertexId v : ids) {
    out.insert(out.end(), lvl.conset[v].begin(), lvl.conset[v].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void fill_stats(DivisionTree &tree) {
  tree.stats.assign(tree.top_level() + 1, {});
  for (std::size_t i = 0; i < tree.stats.size(); ++i) {
    tree.stats[i].level = i;
    tree.stats[i].n_i = i < tree.level_sizes.size() ? tree.level_sizes[i] : 0;
  }
  for (const Region &r : tree.regions) {
    LevelStats &s = tree.stats[r.level];
    ++s.regions;
    s.sum_sizes += r.vertices.size();
    s.max_size = std::max(s.max_size, r.vertices.size());
    s.max_boundary = std::max(s.max_boundary, r.boundary.size());
    s.sum_member_sizes += r.members.size();
    s.max_member_size = std::max(s.max_member_size, r.members.size());
    s.max_member_boundary = std::max(s.max_member_boundary, r.member_boundary.size());
    s.flagged += r.flagged ? 1 : 0;
  }
}

} // namespace

DivisionTree build_recursive_division(const EuclideanGraph &g, const DivisionConfig &config) {
  DivisionTree tree;
  tree.cls = config.cls;
  if (g.max_degree() > 3) {
    auto [work, map] = degree3_transform(g);
    tree.work = std::move(work);
    tree.map = std::move(map);
    tree.transformed = true;
  } else {
    tree.work = g;
    tree.map = VertexMap::identity(g.n());
  }
  const std::size_t d = std::max<std::size_t>(2, g.dim());
  if (config.cls != GraphClass::lanky) {
    if (config.sys == nullptr) {
      throw ContractError("division", "ball and cube classes need their neighborhood system");
    }
    const SystemKind want = config.cls == GraphClass::kply ? SystemKind::ball : SystemKind::cube;
    if (config.sys->kind != want || config.sys->size() != g.n()) {
      throw ContractError("division", "neighborhood system does not match the graph");
    }
  }
  SeparatorBackend backend;
  backend.cls = config.cls;
  backend.work = &tree.work;
  backend.sys = config.sys;
  if (tree.transformed) {
    backend.object_of = &tree.map.backward;
  }
  backend.lanky = default_lanky_params(g.dim());
  backend.lanky.tau = config.tau;
  if (config.eta > 0.0) {
    backend.lanky.eta = config.eta;
  }
  backend.delta = config.delta > 0.0 ? config.delta : default_delta(g.dim());
  backend.eps = config.eps;

  const std::size_t n = tree.work.n();
  const double beta0 = std::pow(2.0, 3.0 * static_cast<double>(d) - 2.0);
  if (static_cast<double>(g.n()) <= beta0) {
    tree.schedule = make_schedule(std::max<std::size_t>(n, 2), d);
    tree.schedule.I = 0;
    tree.level_sizes = {n};
    Region root;
    root.level = 0;
    root.vertices.resize(n);
    std::iota(root.vertices.begin(), root.vertices.end(), 0u);
    root.members = root.vertices;
    tree.regions.push_back(std::move(root));
    fill_stats(tree);
    return tree;
  }

  Contraction con = contract_all(tree.work);
  tree.schedule = con.schedule;
  for (const auto &lvl : con.levels) {
    tree.level_sizes.push_back(lvl.graph.n());
  }
  const std::size_t top = con.levels.size() - 1;
  {
    Region root;
    root.level = top;
    root.vertices.resize(con.levels[top].graph.n());
    std::iota(root.vertices.begin(), root.vertices.end(), 0u);
    root.members.resize(n);
    std::iota(root.members.begin(), root.members.end(), 0u);
    tree.regions.push_back(std::move(root));
  }
  std::vector<std::uint32_t> current = {0};
  for (std::size_t i = top; i-- > 0;) {
    const ContractionLevel &upper = con.levels[i + 1];
    Scratch sc(upper.graph.n(), n);
    std::vector<std::uint32_t> next;
    for (const std::uint32_t idx : current) {
      const std::vector<VertexId> vertices = tree.regions[idx].vertices;
      const std::vector<VertexId> boundary = tree.regions[idx].boundary;
      const std::uint64_t seed = mix_seed(mix_seed(config.seed, i), idx);
      auto pieces = divide_impl(
          vertices, boundary, tree.schedule.beta[i], tree.schedule.z[i], upper, backend, seed,
          &tree.log, sc
      );
      for (const Piece &p : pieces) {
        const Piece e = expand(p, upper);
        Region child;
        child.level = i;
        child.vertices = e.vertices;
        child.boundary = e.boundary;
        child.members = to_members(e.vertices, con.levels[i]);
        child.member_boundary = to_members(e.boundary, con.levels[i]);
        child.parent = idx;
        child.flagged = p.flagged;
        const auto child_idx = static_cast<std::uint32_t>(tree.regions.size());
        tree.regions[idx].children.push_back(child_idx);
        tree.regions.push_back(std::move(child));
        next.push_back(child_idx);
      }
    }
    current = std::move(next);
  }

  // Fit |S| = c k^{1 - 1/(3d-2)} over the recorded separator calls.
  const double expo = 1.0 - 1.0 / (3.0 * static_cast<double>(d) - 2.0);
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto &[k, s] : tree.log.calls) {
    const double x = std::pow(static_cast<double>(k), expo);
    sxy += x * static_cast<double>(s);
    sxx += x * x;
  }
  tree.schedule.set_proxy(sxx > 0.0 ? std::max(1.0, sxy / sxx) : 1.0);
  fill_stats(tree);
  return tree;
}

std::vector<double> inequality_margins(std::size_t d, double f_constant, std::size_t count) {
  // L[i] = ln ln z_i. Exact ceiled values while small, the continuous
  // recurrence in log space afterwards.
  const double ln7 = std::log(7.0);
  std::vector<double> L;
  std::uint64_t z = 2;
  bool exact = true;
  L.push_back(std::log(std::log(2.0)));
  while (L.size() < count + 2) {
    const double prev = L.back();
    if (prev > 700.0) {
      break;
    }
    if (exact) {
      const std::uint64_t nz = next_z(z);
      if (nz < 1000000000000ULL) {
        z = nz;
        L.push_back(std::log(std::log(static_cast<double>(z))));
        continue;
      }
      exact = false;
    }
    L.push_back(0.2 * std::exp(prev) + std::log(ln7));
  }
  const double dd = static_cast<double>(d);
  auto lz = [&](std::size_t i) { return std::exp(L[i]); };
  // ln ln r_j, r_j = z_j^{3d-1} prod_{k<j} z_k.
  auto lnln_r = [&](std::size_t j) {
    std::vector<double> terms{std::log(3.0 * dd - 1.0) + L[j]};
    for (std::size_t k = 0; k < j; ++k) {
      terms.push_back(L[k]);
    }
    return log_sum_exp(terms);
  };
  auto ln_f = [&](std::size_t j) {
    double s = std::log(f_constant) + (3.0 * dd - 2.0) * lz(j);
    for (std::size_t k = 0; k < j; ++k) {
      s += lz(k);
    }
    return s;
  };
  const double lnln2 = std::log(std::log(2.0));
  std::vector<double> margins;
  for (std::size_t i = 0; i < count && i + 1 < L.size(); ++i) {
    if (L[i] > 690.0) {
      break;
    }
    const double lhs = lz(i) - std::log(f_constant);
    std::vector<double> sum_terms;
    for (std::size_t j = 1; j <= i + 1; ++j) {
      sum_terms.push_back(lnln_r(j) - lnln2);
    }
    const double rhs = static_cast<double>(i) * std::log(8.0) + (i == 0 ? 0.0 : ln_f(i - 1)) +
                       (lnln_r(i + 1) - lnln2) + log_sum_exp(sum_terms);
    margins.push_back(lhs - rhs);
  }
  return margins;
}

DivisionReport validate_division(const DivisionTree &tree) {
  DivisionReport rep;
  const EuclideanGraph &g = tree.work;
  const std::size_t n = g.n();
  const Schedule &s = tree.schedule;
  const double dd = static_cast<double>(s.d);
  const double C = kDivisionConstant;
  auto problem = [&](std::string what) {
    rep.valid = false;
    rep.problems.push_back(std::move(what));
  };
  if (tree.regions.empty()) {
    problem("tree has no regions");
    return rep;
  }

  // Threshold on r above which the schedule inequality must hold.
  const double f_constant = s.c_prime * s.proxy;
  const std::vector<double> ext = inequality_margins(s.d, f_constant, 64);
  for (std::size_t i = 0; i < ext.size(); ++i) {
    bool all = true;
    for (std::size_t j = i; j < ext.size(); ++j) {
      all = all && ext[j] > 0.0;
    }
    if (all) {
      rep.threshold_found = true;
      rep.threshold_level = i;
      break;
    }
  }
  if (rep.threshold_found) {
    // log10 r at the threshold level via the same recurrence.
    double ln_r = 0.0;
    std::uint64_t z = 2;
    std::vector<double> lnz{std::log(2.0)};
    for (std::size_t i = 1; i <= rep.threshold_level; ++i) {
      const std::uint64_t nz = next_z(z);
      if (nz < 1000000000000ULL) {
        z = nz;
        lnz.push_back(std::log(static_cast<double>(z)));
      } else {
        lnz.push_back(std::exp(0.2 * lnz.back()) * std::log(7.0));
      }
    }
    for (std::size_t k = 0; k < rep.threshold_level; ++k) {
      ln_r += lnz[k];
    }
    ln_r += (3.0 * dd - 1.0) * lnz[rep.threshold_level];
    rep.threshold_log10_r = ln_r / std::log(10.0);
  }
  const std::vector<double> built = inequality_margins(s.d, f_constant, tree.top_level() + 1);

  std::vector<std::vector<std::uint32_t>> by_level(tree.top_level() + 1);
  for (std::uint32_t i = 0; i < tree.regions.size(); ++i) {
    by_level[tree.regions[i].level].push_back(i);
  }
  for (std::size_t lv = 0; lv < by_level.size(); ++lv) {
    LevelCheck c;
    c.level = lv;
    const double n_i = lv < tree.level_sizes.size() ? static_cast<double>(tree.level_sizes[lv]) : 0.0;
    const double zi = static_cast<double>(s.z[lv]);
    c.regions = by_level[lv].size();
    c.region_bound = std::max(1.0, C * n_i / std::pow(zi, 3.0 * dd - 1.0));
    c.sum_bound = C * n_i;
    c.size_bound = C * s.r[lv] * s.r[lv];
    c.boundary_bound = C * s.f_of_r[lv];
    for (const std::uint32_t idx : by_level[lv]) {
      const Region &r = tree.regions[idx];
      c.sum_sizes += r.vertices.size();
      c.max_member_size = std::max(c.max_member_size, r.members.size());
      c.max_member_boundary = std::max(c.max_member_boundary, r.member_boundary.size());
    }
    c.margin = lv < built.size() ? built[lv] : 0.0;
    c.margin_applies = rep.threshold_found && std::log10(s.r[lv]) > rep.threshold_log10_r;
    c.ok = static_cast<double>(c.regions) <= c.region_bound &&
           static_cast<double>(c.sum_sizes) <= c.sum_bound &&
           static_cast<double>(c.max_member_size) <= c.size_bound &&
           static_cast<double>(c.max_member_boundary) <= c.boundary_bound &&
           (!c.margin_applies || c.margin > 0.0);
    if (!c.ok) {
      problem("level " + std::to_string(lv) + " exceeds a structural bound");
    }
    rep.levels.push_back(c);
  }

  // Every edge inside some leaf.
  std::vector<std::uint32_t> stamp(n, UINT32_MAX);
  std::vector<bool> covered(g.m(), false);
  for (const std::uint32_t leaf : tree.leaves()) {
    const Region &r = tree.regions[leaf];
    for (const VertexId x : r.members) {
      stamp[x] = leaf;
    }
    for (const VertexId x : r.members) {
      for (const EdgeId e : g.incident(x)) {
        if (stamp[g.edge(e).other(x)] == leaf) {
          covered[e] = true;
        }
      }
    }
  }
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (!covered[e]) {
      rep.edges_covered = false;
      problem("edge " + std::to_string(e) + " lies in no leaf");
      break;
    }
  }

  // Shared or inherited vertices must be boundary everywhere they appear.
  std::vector<std::uint32_t> count(n, 0);
  std::vector<std::uint8_t> mark(n, 0);
  for (std::size_t lv = 0; lv < by_level.size() && rep.boundary_consistent; ++lv) {
    std::fill(count.begin(), count.end(), 0);
    for (const std::uint32_t idx : by_level[lv]) {
      for (const VertexId x : tree.regions[idx].members) {
        ++count[x];
      }
    }
    for (const std::uint32_t idx : by_level[lv]) {
      const Region &r = tree.regions[idx];
      for (const VertexId x : r.member_boundary) {
        mark[x] = 1;
      }
      bool ok = std::includes(
          r.members.begin(), r.members.end(), r.member_boundary.begin(), r.member_boundary.end()
      );
      for (const VertexId x : r.members) {
        ok = ok && (count[x] < 2 || mark[x] == 1);
      }
      if (r.parent >= 0) {
        const Region &p = tree.regions[static_cast<std::size_t>(r.parent)];
        for (const VertexId x : intersect(p.member_boundary, r.members)) {
          ok = ok && mark[x] == 1;
        }
      }
      for (const VertexId x : r.member_boundary) {
        mark[x] = 0;
      }
      if (!ok) {
        rep.boundary_consistent = false;
        problem("region " + std::to_string(idx) + " misses a boundary vertex");
        break;
      }
    }
  }

  std::vector<std::uint32_t> cover(n, UINT32_MAX);
  for (std::uint32_t idx = 0; idx < tree.regions.size() && rep.children_cover; ++idx) {
    const Region &r = tree.regions[idx];
    if (r.children.empty()) {
      continue;
    }
    bool ok = true;
    for (const std::uint32_t c : r.children) {
      for (const VertexId x : tree.regions[c].members) {
        ok = ok && std::binary_search(r.members.begin(), r.members.end(), x);
        cover[x] = idx;
      }
    }
    for (const VertexId x : r.members) {
      ok = ok && cover[x] == idx;
    }
    if (!ok) {
      rep.children_cover = false;
      problem("children of region " + std::to_string(idx) + " do not cover it");
    }
  }
  if (tree.regions[0].members.size() != n) {
    rep.children_cover = false;
    problem("root does not hold every vertex");
  }
  return rep;
}

} // namespace geosssp

/*******************************************************************************
 * @file:   contraction.cpp
 ******************************************************************************/
#include "geosssp/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "geosssp/error.hpp"

namespace geosssp {

namespace {

/// Bottom-up accumulation over a DFS spanning tree of each component.
std::vector<std::vector<VertexId>> accumulate_clusters(const EuclideanGraph &g, std::uint64_t z) {
  const std::size_t n = g.n();
  std::vector<std::vector<VertexId>> clusters;
  std::vector<VertexId> parent(n, kInvalidVertex);
  std::vector<bool> visited(n, false);
  std::vector<std::vector<VertexId>> pending(n);
  std::vector<VertexId> cluster_root;
  std::vector<std::pair<VertexId, std::size_t>> stack; // (vertex, next incident index)
  std::vector<bool> in_leftover(n, false);

  for (VertexId root = 0; root < n; ++root) {
    if (visited[root]) {
      continue;
    }
    const std::size_t first_cluster = clusters.size();
    visited[root] = true;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto &[v, next] = stack.back();
      const auto inc = g.incident(v);
      if (next < inc.size()) {
        const VertexId u = g.edge(inc[next]).other(v);
        ++next;
        if (!visited[u]) {
          visited[u] = true;
          parent[u] = v;
          stack.emplace_back(u, 0);
        }
        continue;
      }
      // v finished: its pending children were already folded into pending[v].
      const VertexId done = v;
      stack.pop_back();
      pending[done].push_back(done);
      if (pending[done].size() >= z) {
        clusters.push_back(std::move(pending[done]));
        cluster_root.push_back(done);
        pending[done].clear();
      } else if (done != root) {
        auto &up = pending[parent[done]];
        up.insert(up.end(), pending[done].begin(), pending[done].end());
        pending[done].clear();
      }
    }
    if (pending[root].empty()) {
      continue;
    }
    std::vector<VertexId> leftover = std::move(pending[root]);
    pending[root].clear();
    if (clusters.size() == first_cluster) {
      clusters.push_back(std::move(leftover));
      cluster_root.push_back(root);
      continue;
    }
    // Merge the undersized root part into a cluster hanging off it.
    for (const VertexId v : leftover) {
      in_leftover[v] = true;
    }
    std::size_t target = first_cluster;
    for (std::size_t c = first_cluster; c < clusters.size(); ++c) {
      const VertexId p = parent[cluster_root[c]];
      if (p != kInvalidVertex && in_leftover[p]) {
        target = c;
        break;
      }
    }
    for (const VertexId v : leftover) {
      in_leftover[v] = false;
    }
    clusters[target].insert(clusters[target].end(), leftover.begin(), leftover.end());
  }
  for (auto &c : clusters) {
    std::sort(c.begin(), c.end());
  }
  std::sort(clusters.begin(), clusters.end(), [](const auto &a, const auto &b) {
    return a.front() < b.front();
  });
  return clusters;
}

double power(std::uint64_t base, std::size_t e) {
  double v = 1.0;
  for (std::size_t i = 0; i < e; ++i) {
    v *= static_cast<double>(base);
  }
  return v;
}

} // namespace

std::uint64_t next_z(std::uint64_t z) {
  const double v = std::ceil(std::pow(7.0, std::pow(static_cast<double>(z), 0.2)));
  constexpr double kCap = 4.0e18;
  return v >= kCap ? static_cast<std::uint64_t>(kCap) : static_cast<std::uint64_t>(v);
}

void Schedule::extend() {
  const std::size_t i = z.size();
  const std::uint64_t zi = i == 0 ? 2 : next_z(z.back());
  const double before = i == 0 ? 1.0 : alpha.back();
  z.push_back(zi);
  alpha.push_back(before * static_cast<double>(zi));
  const double b = power(zi, 3 * d - 2);
  beta.push_back(b);
  r.push_back(power(zi, 3 * d - 1) * before);
  f_of_r.push_back(c_prime * proxy * b * before);
}

void Schedule::set_proxy(double value) {
  proxy = value;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double before = i == 0 ? 1.0 : alpha[i - 1];
    f_of_r[i] = c_prime * proxy * beta[i] * before;
  }
}

Schedule make_schedule(std::size_t n, std::size_t d) {
  if (n < 2 || d < 2) {
    throw ContractError("contraction", "make_schedule needs n >= 2 and d >= 2");
  }
  Schedule s;
  s.d = d;
  s.extend();
  const double target = std::log2(static_cast<double>(n));
  while (s.alpha.back() < target) {
    s.extend();
  }
  s.I = s.z.size() - 1;
  s.extend(); // entry I+1 feeds the top-level budget
  return s;
}

std::vector<std::vector<VertexId>> cluster(const EuclideanGraph &g, std::uint64_t z) {
  if (g.max_degree() > 3) {
    throw ContractError(
        "contraction", "cluster needs max degree <= 3 (got " + std::to_string(g.max_degree()) + ")"
    );
  }
  if (z == 0) {
    throw ContractError("contraction", "cluster size target must be positive");
  }
  return accumulate_clusters(g, z);
}

std::vector<std::vector<VertexId>> cluster_any_degree(const EuclideanGraph &g, std::uint64_t z) {
  if (z == 0) {
    throw ContractError("contraction", "cluster size target must be positive");
  }
  return accumulate_clusters(g, z);
}

ContractionLevel base_level(const EuclideanGraph &g) {
  ContractionLevel lvl;
  lvl.level = 0;
  lvl.graph = g;
  lvl.cset.resize(g.n());
  lvl.conset.resize(g.n());
  lvl.gamma.resize(g.n());
  lvl.owner.resize(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    lvl.cset[v] = {v};
    lvl.conset[v] = {v};
    lvl.gamma[v] = {v};
    lvl.owner[v] = v;
  }
  lvl.rep_of.resize(g.m());
  lvl.rep_ends.resize(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    lvl.rep_of[e] = e;
    lvl.rep_ends[e] = {g.edge(e).u, g.edge(e).v};
  }
  return lvl;
}

namespace {

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) {
    std::swap(a, b);
  }
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

ContractionLevel contract(const ContractionLevel &prev, std::uint64_t z) {
  const EuclideanGraph &pg = prev.graph;
  const auto clusters =
      pg.max_degree() <= 3 ? cluster(pg, z) : cluster_any_degree(pg, z);

  ContractionLevel cur;
  cur.level = prev.level + 1;
  cur.z_used = z;
  const std::size_t n = clusters.size();
  std::vector<VertexId> cid(pg.n());
  cur.cset = clusters;
  cur.conset.resize(n);
  cur.owner.resize(prev.owner.size());
  std::vector<double> coords;
  coords.reserve(n * pg.dim());
  for (VertexId c = 0; c < n; ++c) {
    for (const VertexId v : clusters[c]) {
      cid[v] = c;
      cur.conset[c].insert(cur.conset[c].end(), prev.conset[v].begin(), prev.conset[v].end());
    }
    std::sort(cur.conset[c].begin(), cur.conset[c].end());
    for (const VertexId b : cur.conset[c]) {
      cur.owner[b] = c;
    }
    // Placed at the smallest base vertex, like every level.
    const PointView p = pg.point(prev.owner[cur.conset[c].front()]);
    coords.insert(coords.end(), p.begin(), p.end());
  }

  std::unordered_map<std::uint64_t, EdgeId> seen;
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < pg.m(); ++e) {
    const VertexId a = cid[pg.edge(e).u];
    const VertexId b = cid[pg.edge(e).v];
    if (a == b) {
      continue;
    }
    if (seen.emplace(pair_key(a, b), static_cast<EdgeId>(edges.size())).second) {
      edges.push_back({std::min(a, b), std::max(a, b), pg.edge(e).w});
    }
  }
  cur.graph = EuclideanGraph(pg.dim(), std::move(coords), std::move(edges));
  build_representative(cur, prev);
  return cur;
}

void build_representative(ContractionLevel &cur, const ContractionLevel &prev) {
  const EuclideanGraph &pg = prev.graph;
  const EuclideanGraph &g = cur.graph;
  std::vector<VertexId> cid(pg.n());
  for (VertexId c = 0; c < cur.cset.size(); ++c) {
    for (const VertexId v : cur.cset[c]) {
      cid[v] = c;
    }
  }
  std::unordered_map<std::uint64_t, EdgeId> index;
  index.reserve(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    index.emplace(pair_key(g.edge(e).u, g.edge(e).v), e);
  }
  cur.rep_of.assign(g.m(), kInvalidEdge);
  cur.rep_ends.assign(g.m(), {kInvalidVertex, kInvalidVertex});
  // Previous-level edges in id order: the first crossing edge wins.
  for (EdgeId e = 0; e < pg.m(); ++e) {
    const VertexId a = cid[pg.edge(e).u];
    const VertexId b = cid[pg.edge(e).v];
    if (a == b) {
      continue;
    }
    const EdgeId ce = index.at(pair_key(a, b));
    if (cur.rep_of[ce] == kInvalidEdge) {
      cur.rep_of[ce] = prev.rep_of[e];
      cur.rep_ends[ce] = prev.rep_ends[e];
    }
  }
  cur.gamma.assign(g.n(), {});
  for (EdgeId e = 0; e < g.m(); ++e) {
    const auto [x, y] = cur.rep_ends[e];
    cur.gamma[cur.owner[x]].push_back(x);
    cur.gamma[cur.owner[y]].push_back(y);
  }
  for (auto &gm : cur.gamma) {
    std::sort(gm.begin(), gm.end());
    gm.erase(std::unique(gm.begin(), gm.end()), gm.end());
  }
}

Contraction contract_all(const EuclideanGraph &g) {
  Contraction out;
  const std::size_t n = g.n();
  out.levels.push_back(base_level(g));
  const std::size_t d = std::max<std::size_t>(2, g.dim());
  if (n < 2) {
    out.schedule = make_schedule(2, d);
    out.schedule.I = 0;
    return out;
  }
  out.schedule = make_schedule(n, d);
  const double target = static_cast<double>(n) / std::log2(static_cast<double>(n));
  for (std::size_t i = 0;; ++i) {
    while (out.schedule.z.size() <= i + 1) {
      out.schedule.extend();
    }
    ContractionLevel next = contract(out.levels.back(), out.schedule.z[i]);
    const bool progress = next.graph.n() < out.levels.back().graph.n();
    out.levels.push_back(std::move(next));
    if (!progress || static_cast<double>(out.levels.back().graph.n()) <= target) {
      break;
    }
  }
  out.schedule.I = out.levels.size() - 2;
  while (out.schedule.z.size() < out.levels.size()) {
    out.schedule.extend();
  }
  return out;
}

} // namespace geosssp

/*******************************************************************************
 * @file:   sssp.cpp
 ******************************************************************************/
#include "geosssp/sssp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "geosssp/error.hpp"

namespace geosssp {

namespace {

constexpr double kBudgetCap = 1e9;

} // namespace

Engine::Engine(const DivisionTree &tree, EngineOptions options)
    : _tree(tree), _options(options) {
  const EuclideanGraph &g = tree.work;
  const std::size_t nodes = tree.regions.size();
  _budget.assign(nodes, 1);
  _slot_in_parent.assign(nodes, 0);
  _slot_vertex.resize(nodes);
  _owned_begin.resize(nodes);
  _owned.resize(nodes);
  _where.resize(g.n());
  _heaps.reserve(nodes);

  const Schedule &s = tree.schedule;
  for (std::uint32_t i = 0; i < nodes; ++i) {
    const Region &r = tree.regions[i];
    for (std::uint32_t k = 0; k < r.children.size(); ++k) {
      _slot_in_parent[r.children[k]] = k;
    }
    if (r.children.empty()) {
      _heaps.emplace_back(r.members.size());
      continue;
    }
    _heaps.emplace_back(r.children.size());
    if (_options.fixed_budget) {
      _budget[i] = std::max<std::uint64_t>(1, *_options.fixed_budget);
    } else if (r.level >= 1 && r.level < s.r.size()) {
      const double b = std::ceil(s.r[r.level] / s.r[r.level - 1]);
      _budget[i] = static_cast<std::uint64_t>(std::clamp(b, 1.0, kBudgetCap));
    }
  }

  // Each edge belongs to the first leaf holding both endpoints.
  std::vector<std::uint32_t> owner(g.m(), std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> stamp(g.n(), std::numeric_limits<std::uint32_t>::max());
  for (const std::uint32_t leaf : tree.leaves()) {
    const Region &r = tree.regions[leaf];
    _slot_vertex[leaf] = r.members;
    for (std::uint32_t k = 0; k < r.members.size(); ++k) {
      stamp[r.members[k]] = leaf;
      _where[r.members[k]].emplace_back(leaf, k);
    }
    std::vector<std::vector<EdgeId>> per_slot(r.members.size());
    for (std::uint32_t k = 0; k < r.members.size(); ++k) {
      const VertexId x = r.members[k];
      for (const EdgeId e : g.incident(x)) {
        const VertexId y = g.edge(e).other(x);
        const bool free = owner[e] == std::numeric_limits<std::uint32_t>::max();
        if (stamp[y] == leaf && (free || owner[e] == leaf)) {
          owner[e] = leaf;
          per_slot[k].push_back(e);
        }
      }
    }
    auto &begin = _owned_begin[leaf];
    begin.assign(1, 0);
    for (const auto &es : per_slot) {
      _owned[leaf].insert(_owned[leaf].end(), es.begin(), es.end());
      begin.push_back(_owned[leaf].size());
    }
  }
  for (VertexId v = 0; v < g.n(); ++v) {
    if (_where[v].empty()) {
      throw ContractError("sssp", "vertex " + std::to_string(v) + " lies in no leaf");
    }
  }
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (owner[e] == std::numeric_limits<std::uint32_t>::max()) {
      throw ContractError("sssp", "edge " + std::to_string(e) + " lies in no leaf");
    }
  }
}

Engine::Key Engine::node_min(std::uint32_t node) const {
  const auto &h = _heaps[node];
  return h.empty() ? Key{kInfinity, kInvalidVertex} : h.top_key();
}

void Engine::propagate(std::uint32_t node) {
  for (;;) {
    const std::int64_t p = _tree.regions[node].parent;
    if (p < 0) {
      return;
    }
    const auto parent = static_cast<std::uint32_t>(p);
    const Key k = node_min(node);
    auto &h = _heaps[parent];
    const std::size_t slot = _slot_in_parent[node];
    if (k.first == kInfinity) {
      if (!h.contains(slot)) {
        return;
      }
      h.erase(slot);
    } else {
      if (h.contains(slot) && h.key(slot) == k) {
        return;
      }
      h.set(slot, k);
    }
    node = parent;
  }
}

void Engine::open(VertexId u) {
  const Key k{_labels.dist[u], u};
  for (const auto &[leaf, slot] : _where[u]) {
    _heaps[leaf].set(slot, k);
    ++_stats.key_updates;
    propagate(leaf);
  }
}

void Engine::process(std::uint32_t node, std::uint64_t budget) {
  const Region &r = _tree.regions[node];
  ++_stats.activations_per_level[r.level];
  auto &h = _heaps[node];
  if (r.children.empty()) {
    const EuclideanGraph &g = _tree.work;
    for (std::uint64_t step = 0; step < budget && !h.empty(); ++step) {
      const std::size_t slot = h.pop();
      const VertexId v = _slot_vertex[node][slot];
      const auto &begin = _owned_begin[node];
      for (std::size_t i = begin[slot]; i < begin[slot + 1]; ++i) {
        const EdgeId e = _owned[node][i];
        const VertexId u = g.edge(e).other(v);
        ++_stats.relaxations;
        const double nd = _labels.dist[v] + g.edge(e).w;
        if (nd < _labels.dist[u]) {
          _labels.dist[u] = nd;
          _labels.parent[u] = e;
          open(u);
        }
      }
    }
    propagate(node);
  } else {
    for (std::uint64_t step = 0; step < budget && !h.empty(); ++step) {
      const std::uint32_t child = r.children[h.top()];
      process(child, _budget[child]);
    }
  }
  if (_options.check && !check_consistency()) {
    _consistent = false;
  }
}

DistanceLabels Engine::run(VertexId source, EngineStats *stats) {
  const EuclideanGraph &g = _tree.work;
  if (source >= g.n()) {
    throw ContractError("sssp", "source " + std::to_string(source) + " out of range");
  }
  const auto start = std::chrono::steady_clock::now();
  _stats = {};
  _stats.n = g.n();
  _stats.m = g.m();
  _stats.levels = _tree.top_level() + 1;
  _stats.activations_per_level.assign(_stats.levels, 0);
  _labels.dist.assign(g.n(), kInfinity);
  _labels.parent.assign(g.n(), kInvalidEdge);
  for (std::size_t i = 0; i < _heaps.size(); ++i) {
    while (!_heaps[i].empty()) {
      _heaps[i].pop();
    }
  }
  _consistent = true;

  _labels.dist[source] = 0.0;
  open(source);
  while (!_heaps[0].empty()) {
    process(0, _budget[0]);
  }
  if (_options.check && !_consistent) {
    throw ContractError("sssp", "heap hierarchy lost consistency during the run");
  }
  _stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (stats != nullptr) {
    *stats = _stats;
  }
  return _labels;
}

bool Engine::check_consistency() const {
  for (std::uint32_t i = 0; i < _heaps.size(); ++i) {
    const Region &r = _tree.regions[i];
    const auto &h = _heaps[i];
    if (!h.well_formed()) {
      return false;
    }
    if (r.children.empty()) {
      for (std::uint32_t k = 0; k < _slot_vertex[i].size(); ++k) {
        const VertexId v = _slot_vertex[i][k];
        if (h.contains(k) && h.key(k) != Key{_labels.dist[v], v}) {
          return false;
        }
      }
      continue;
    }
    for (std::uint32_t k = 0; k < r.children.size(); ++k) {
      const Key child = node_min(r.children[k]);
      if (child.first == kInfinity ? h.contains(k) : (!h.contains(k) || h.key(k) != child)) {
        return false;
      }
    }
  }
  return true;
}

DistanceLabels sssp(
    const DivisionTree &tree, VertexId source, EngineStats *stats, const EngineOptions &options
) {
  const std::size_t n = tree.map.forward.size();
  if (source >= n) {
    throw ContractError("sssp", "source " + std::to_string(source) + " out of range");
  }
  Engine engine(tree, options);
  DistanceLabels work = engine.run(tree.map.forward[source].front(), stats);
  return tree.transformed ? pull_back(work, tree.map) : work;
}

} // namespace geosssp

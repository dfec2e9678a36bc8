/*******************************************************************************
 * Shortest paths driven by a recursive division. Every tree node keeps a
 * priority queue: leaves over their vertices, internal nodes over their
 * children keyed by the child's minimum. A node is processed with a budget
 * of steps, spending each on its current minimum child.
 *
 * @file:   sssp.hpp
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "geosssp/division.hpp"
#include "geosssp/graph.hpp"

namespace geosssp {

/// Binary heap over ids 0..capacity-1 with arbitrary key updates.
template <typename Key> class IndexedHeap {
public:
  explicit IndexedHeap(std::size_t capacity = 0) : _pos(capacity, kAbsent), _key(capacity) {}

  [[nodiscard]] bool empty() const { return _heap.empty(); }
  [[nodiscard]] std::size_t size() const { return _heap.size(); }
  [[nodiscard]] bool contains(std::size_t id) const { return _pos[id] != kAbsent; }
  [[nodiscard]] std::size_t top() const { return _heap.front(); }
  [[nodiscard]] const Key &top_key() const { return _key[_heap.front()]; }
  [[nodiscard]] const Key &key(std::size_t id) const { return _key[id]; }

  /// Inserts id or moves it to the new key.
  void set(std::size_t id, const Key &k) {
    if (_pos[id] == kAbsent) {
      _key[id] = k;
      _pos[id] = _heap.size();
      _heap.push_back(id);
      up(_pos[id]);
      return;
    }
    const bool smaller = k < _key[id];
    _key[id] = k;
    if (smaller) {
      up(_pos[id]);
    } else {
      down(_pos[id]);
    }
  }

  void erase(std::size_t id) {
    const std::size_t p = _pos[id];
    if (p == kAbsent) {
      return;
    }
    swap_at(p, _heap.size() - 1);
    _heap.pop_back();
    _pos[id] = kAbsent;
    if (p < _heap.size()) {
      up(p);
      down(p);
    }
  }

  std::size_t pop() {
    const std::size_t id = _heap.front();
    erase(id);
    return id;
  }

  /// Heap order holds at every position.
  [[nodiscard]] bool well_formed() const {
    for (std::size_t i = 1; i < _heap.size(); ++i) {
      if (_key[_heap[i]] < _key[_heap[(i - 1) / 2]] || _pos[_heap[i]] != i) {
        return false;
      }
    }
    return true;
  }

private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  void swap_at(std::size_t a, std::size_t b) {
    std::swap(_heap[a], _heap[b]);
    _pos[_heap[a]] = a;
    _pos[_heap[b]] = b;
  }
  void up(std::size_t i) {
    while (i > 0) {
      const std::size_t p = (i - 1) / 2;
      if (!(_key[_heap[i]] < _key[_heap[p]])) {
        break;
      }
      swap_at(i, p);
      i = p;
    }
  }
  void down(std::size_t i) {
    for (;;) {
      std::size_t best = i;
      for (std::size_t c = 2 * i + 1; c <= 2 * i + 2 && c < _heap.size(); ++c) {
        if (_key[_heap[c]] < _key[_heap[best]]) {
          best = c;
        }
      }
      if (best == i) {
        return;
      }
      swap_at(i, best);
      i = best;
    }
  }

  std::vector<std::size_t> _heap;
  std::vector<std::size_t> _pos;
  std::vector<Key> _key;
};

struct EngineOptions {
  std::optional<std::uint64_t> fixed_budget; // same budget at every internal node
  bool check = false;                        // verify heap invariants after every step
};

struct EngineStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t levels = 0;
  std::uint64_t relaxations = 0;
  std::uint64_t key_updates = 0;
  std::vector<std::uint64_t> activations_per_level;
  double wall_ms = 0.0;
};

/// Runs on the work graph of a division tree.
class Engine {
public:
  explicit Engine(const DivisionTree &tree, EngineOptions options = {});

  /// Distances from a work-graph vertex.
  DistanceLabels run(VertexId source, EngineStats *stats = nullptr);

  /// Heap keys agree with child minima and with the current labels.
  [[nodiscard]] bool check_consistency() const;

  [[nodiscard]] std::uint64_t budget(std::uint32_t node) const { return _budget[node]; }

private:
  using Key = std::pair<double, VertexId>;

  void open(VertexId u);
  void propagate(std::uint32_t node);
  void process(std::uint32_t node, std::uint64_t budget);
  [[nodiscard]] Key node_min(std::uint32_t node) const;

  const DivisionTree &_tree;
  EngineOptions _options;
  std::vector<std::uint64_t> _budget;
  std::vector<std::uint32_t> _slot_in_parent;
  // Leaves: local slot -> vertex, and owned edges per slot in CSR form.
  std::vector<std::vector<VertexId>> _slot_vertex;
  std::vector<std::vector<std::size_t>> _owned_begin;
  std::vector<std::vector<EdgeId>> _owned;
  // Vertex -> (leaf, slot) occurrences.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> _where;
  std::vector<IndexedHeap<Key>> _heaps;

  DistanceLabels _labels;
  EngineStats _stats;
  bool _consistent = true;
};

/// Distances from `source`, a vertex of the graph the tree was built from.
DistanceLabels sssp(
    const DivisionTree &tree, VertexId source, EngineStats *stats = nullptr,
    const EngineOptions &options = {}
);

} // namespace geosssp

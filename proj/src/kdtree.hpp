/*******************************************************************************
 * Static k-d tree over a flat coordinate array. Internal helper for nearest
 * neighbor and radius queries.
 *
 * @file:   kdtree.hpp
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

namespace geosssp::detail {

class KdTree {
public:
  KdTree(const std::vector<double> &coords, std::size_t dim) : _coords(coords), _dim(dim) {
    const std::size_t n = dim == 0 ? 0 : coords.size() / dim;
    _perm.resize(n);
    std::iota(_perm.begin(), _perm.end(), 0u);
    if (n > 0) {
      build(0, n, 0);
    }
  }

  /// The k nearest points to q (excluding index `skip`), as (squared distance,
  /// index) sorted ascending. Ties broken by index.
  std::vector<std::pair<double, std::uint32_t>>
  nearest(const double *q, std::size_t k, std::uint32_t skip = UINT32_MAX) const {
    std::priority_queue<std::pair<double, std::uint32_t>> best;
    if (!_perm.empty() && k > 0) {
      knn(0, _perm.size(), 0, q, k, skip, best);
    }
    std::vector<std::pair<double, std::uint32_t>> out;
    out.reserve(best.size());
    while (!best.empty()) {
      out.push_back(best.top());
      best.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// Indices of points with squared distance to q strictly below r2.
  void within(const double *q, double r2, std::vector<std::uint32_t> &out) const {
    if (!_perm.empty()) {
      range(0, _perm.size(), 0, q, r2, out);
    }
  }

private:
  const std::vector<double> &_coords;
  std::size_t _dim;
  std::vector<std::uint32_t> _perm;

  [[nodiscard]] double coord(std::uint32_t i, std::size_t j) const { return _coords[i * _dim + j]; }

  [[nodiscard]] double sq_dist(std::uint32_t i, const double *q) const {
    double s = 0.0;
    for (std::size_t j = 0; j < _dim; ++j) {
      const double t = coord(i, j) - q[j];
      s += t * t;
    }
    return s;
  }

  // Median split on axis (depth mod dim); node stored at mid of [lo, hi).
  void build(std::size_t lo, std::size_t hi, std::size_t depth) {
    if (hi - lo <= 1) {
      return;
    }
    const std::size_t axis = depth % _dim;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(
        _perm.begin() + lo, _perm.begin() + mid, _perm.begin() + hi,
        [&](std::uint32_t a, std::uint32_t b) {
          const double ca = coord(a, axis);
          const double cb = coord(b, axis);
          return ca != cb ? ca < cb : a < b;
        }
    );
    build(lo, mid, depth + 1);
    build(mid + 1, hi, depth + 1);
  }

  void knn(
      std::size_t lo, std::size_t hi, std::size_t depth, const double *q, std::size_t k,
      std::uint32_t skip, std::priority_queue<std::pair<double, std::uint32_t>> &best
  ) const {
    if (lo >= hi) {
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::uint32_t p = _perm[mid];
    if (p != skip) {
      const std::pair<double, std::uint32_t> cand{sq_dist(p, q), p};
      if (best.size() < k) {
        best.push(cand);
      } else if (cand < best.top()) {
        best.pop();
        best.push(cand);
      }
    }
    if (hi - lo == 1) {
      return;
    }
    const std::size_t axis = depth % _dim;
    const double diff = q[axis] - coord(p, axis);
    const bool left_first = diff < 0.0;
    if (left_first) {
      knn(lo, mid, depth + 1, q, k, skip, best);
    } else {
      knn(mid + 1, hi, depth + 1, q, k, skip, best);
    }
    if (best.size() < k || diff * diff <= best.top().first) {
      if (left_first) {
        knn(mid + 1, hi, depth + 1, q, k, skip, best);
      } else {
        knn(lo, mid, depth + 1, q, k, skip, best);
      }
    }
  }

  void range(
      std::size_t lo, std::size_t hi, std::size_t depth, const double *q, double r2,
      std::vector<std::uint32_t> &out
  ) const {
    if (lo >= hi) {
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::uint32_t p = _perm[mid];
    if (sq_dist(p, q) < r2) {
      out.push_back(p);
    }
    if (hi - lo == 1) {
      return;
    }
    const std::size_t axis = depth % _dim;
    const double diff = q[axis] - coord(p, axis);
    if (diff < 0.0 || diff * diff < r2) {
      range(lo, mid, depth + 1, q, r2, out);
    }
    if (diff >= 0.0 || diff * diff < r2) {
      range(mid + 1, hi, depth + 1, q, r2, out);
    }
  }
};

} // namespace geosssp::detail

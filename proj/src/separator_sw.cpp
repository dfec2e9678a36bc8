/*******************************************************************************
 * Cube separator for cube systems: a random axis-aligned cube drawn from a
 * separating annulus found on a sample.
 *
 * @file:   separator_sw.cpp
 ******************************************************************************/
#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "geosssp/error.hpp"
#include "geosssp/rng.hpp"
#include "geosssp/separators.hpp"

namespace geosssp {

namespace {

constexpr int kScales = 32;

/// L-infinity distance from c to the farthest and to the nearest point of q.
std::pair<double, double> linf_extent(const Cube &q, const std::vector<double> &c) {
  double far = 0.0;
  double near = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double a = q.corner[j] - c[j];
    const double b = q.corner[j] + q.side - c[j];
    far = std::max({far, std::abs(a), std::abs(b)});
    near = std::max({near, a, -b, 0.0});
  }
  return {far, near};
}

bool contained(const Rect &r, const Cube &q) {
  for (std::size_t j = 0; j < q.corner.dim(); ++j) {
    if (q.corner[j] < r.lo[j] || q.corner[j] + q.side > r.hi[j]) {
      return false;
    }
  }
  return true;
}

} // namespace

double sw_balance_bound(double eps) {
  return 2.0 / 3.0 + eps;
}

SeparatorCut sw_separator(const NeighborhoodSystem &sys, double eps, std::uint64_t seed) {
  if (sys.kind != SystemKind::cube) {
    throw ContractError("separators", "sw_separator needs a cube system");
  }
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) {
    throw ContractError("separators", "sw epsilon must lie in (0, 1/3)");
  }
  const std::size_t n = sys.size();
  const std::size_t d = sys.dim;
  SeparatorCut cut;
  if (n == 0) {
    std::vector<double> hi(d, 1.0);
    cut.surface = make_rect(Point(d), Point(std::move(hi)));
    return cut;
  }
  if (n == 1) {
    // A small cube around the center straddles the only cube.
    const Cube &q = sys.cubes[0];
    std::vector<double> lo = q.center().coords();
    std::vector<double> hi = lo;
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] -= 0.25 * q.side;
      hi[j] += 0.25 * q.side;
    }
    cut.surface = make_rect(Point(std::move(lo)), Point(std::move(hi)));
    cut.S = {0};
    cut.cut_object_ids = {0};
    cut.attempts = 1;
    return cut;
  }

  const double dd = static_cast<double>(d);
  const double wanted = kSampleConstant / (eps * eps) * dd * dd * dd * std::log(dd / eps);
  const std::size_t m = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(wanted)));
  Rng rng(seed);
  std::vector<std::uint32_t> sample(m);
  if (m == n) {
    for (std::uint32_t i = 0; i < n; ++i) {
      sample[i] = i;
    }
  } else {
    for (std::uint32_t &s : sample) {
      s = static_cast<std::uint32_t>(rng.below(n));
    }
  }
  const double sample_limit = (2.0 / 3.0 + 0.5 * eps) * static_cast<double>(m);
  const double limit = sw_balance_bound(eps) * static_cast<double>(n);

  std::vector<double> far(m);
  std::vector<double> near(m);
  std::vector<double> sorted_far(m);
  std::vector<double> sorted_near(m);
  for (int attempt = 0; attempt < kInnerDraws * kOuterRestarts; ++attempt) {
    ++cut.attempts;
    std::vector<double> center(d);
    if (attempt == 0) {
      std::vector<double> column(m);
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
          column[i] = sys.cubes[sample[i]].corner[j] + 0.5 * sys.cubes[sample[i]].side;
        }
        const auto mid = column.begin() + static_cast<std::ptrdiff_t>((m - 1) / 2);
        std::nth_element(column.begin(), mid, column.end());
        center[j] = *mid;
      }
    } else {
      center = sys.cubes[sample[rng.below(m)]].center().coords();
    }

    double min_pos = kInfinity;
    double max_far = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      std::tie(far[i], near[i]) = linf_extent(sys.cubes[sample[i]], center);
      max_far = std::max(max_far, far[i]);
      if (far[i] > 0.0) {
        min_pos = std::min(min_pos, far[i]);
      }
      if (near[i] > 0.0) {
        min_pos = std::min(min_pos, near[i]);
      }
    }
    if (!(max_far > 0.0) || !std::isfinite(min_pos)) {
      continue;
    }
    sorted_far = far;
    sorted_near = near;
    std::sort(sorted_far.begin(), sorted_far.end());
    std::sort(sorted_near.begin(), sorted_near.end());
    // inside(h): sample cubes within the closed cube of half-side h.
    // outside(h): sample cubes missing its open interior.
    auto inside = [&](double h) {
      return static_cast<double>(
          std::upper_bound(sorted_far.begin(), sorted_far.end(), h) - sorted_far.begin()
      );
    };
    auto outside = [&](double h) {
      return static_cast<double>(
          sorted_near.end() - std::lower_bound(sorted_near.begin(), sorted_near.end(), h)
      );
    };
    const double s_lo = 0.5 * min_pos;
    const double s_hi = 2.0 * max_far;
    std::vector<double> scales(kScales);
    for (int s = 0; s < kScales; ++s) {
      scales[s] = s_lo * std::pow(s_hi / s_lo, static_cast<double>(s) / (kScales - 1));
    }
    double best_ratio = 0.0;
    double h_in = 0.0;
    double h_out = 0.0;
    for (int a = 0; a < kScales; ++a) {
      if (outside(scales[a]) > sample_limit) {
        continue;
      }
      for (int b = kScales - 1; b > a; --b) {
        if (inside(scales[b]) <= sample_limit) {
          const double ratio = scales[b] / scales[a];
          if (ratio > best_ratio) {
            best_ratio = ratio;
            h_in = scales[a];
            h_out = scales[b];
          }
          break;
        }
      }
    }
    if (best_ratio == 0.0) {
      continue;
    }
    const double h = rng.uniform(h_in, h_out);
    std::vector<double> lo(center);
    std::vector<double> hi(center);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] -= h;
      hi[j] += h;
    }
    const Rect rect = make_rect(Point(std::move(lo)), Point(std::move(hi)));
    std::vector<VertexId> in;
    std::vector<VertexId> out;
    std::vector<VertexId> on;
    for (VertexId i = 0; i < n; ++i) {
      if (rect_cuts_cube(rect, sys.cubes[i])) {
        on.push_back(i);
      } else if (contained(rect, sys.cubes[i])) {
        in.push_back(i);
      } else {
        out.push_back(i);
      }
    }
    if (static_cast<double>(in.size()) <= limit && static_cast<double>(out.size()) <= limit) {
      cut.surface = rect;
      cut.cut_object_ids = on;
      cut.S = std::move(on);
      cut.A = std::move(in);
      cut.B = std::move(out);
      return cut;
    }
  }
  throw ContractError(
      "separators", "sw_separator: no separating annulus after " + std::to_string(cut.attempts) +
                        " attempts (n=" + std::to_string(n) + ")"
  );
}

} // namespace geosssp

/*******************************************************************************
 * Sphere separator for ball systems.
 *
 * Centers are lifted onto the unit sphere in R^{d+1}. A hyperplane through a
 * centerpoint c of the lifted points meets the sphere in a circle whose
 * preimage is a sphere in R^d. Rotating c onto the downward axis and
 * dilating by sqrt((1-|c|)/(1+|c|)) turns exactly those circles into great
 * circles, so drawing a uniform great circle in the normalized picture and
 * pulling it back gives a random sphere through the centerpoint.
 *
 * @file:   separator_mttv.cpp
 ******************************************************************************/
#include <algorithm>
#include <cmath>
#include <string>

#include "geosssp/error.hpp"
#include "geosssp/rng.hpp"
#include "geosssp/separators.hpp"

namespace geosssp {

namespace {

constexpr std::size_t kRadonLevels = 4;
constexpr std::size_t kAuditPoints = 4096;
constexpr int kAuditPlanes = 256;

std::vector<double> random_unit(Rng &rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (;;) {
    double norm2 = 0.0;
    for (double &x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
    if (norm2 > 1e-24) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double &x : v) {
        x *= inv;
      }
      return v;
    }
  }
}

/// Radon point of dim+2 points: solves sum l_i p_i = 0, sum l_i = 0 for a
/// nonzero l and returns the convex combination of the positive part.
std::vector<double> radon_point(const std::vector<const std::vector<double> *> &pts, std::size_t dim) {
  const std::size_t cols = dim + 2;
  const std::size_t rows = dim + 1;
  std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      m[r][c] = (*pts[c])[r];
    }
    m[dim][c] = 1.0;
  }
  // Row-reduce with partial pivoting; remember pivot columns.
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < rows; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[best][c])) {
        best = r;
      }
    }
    if (std::abs(m[best][c]) < 1e-12) {
      continue;
    }
    std::swap(m[row], m[best]);
    const double inv = 1.0 / m[row][c];
    for (double &x : m[row]) {
      x *= inv;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != row && m[r][c] != 0.0) {
        const double f = m[r][c];
        for (std::size_t k = 0; k < cols; ++k) {
          m[r][k] -= f * m[row][k];
        }
      }
    }
    pivot_col.push_back(c);
    ++row;
  }
  // First free column gets coefficient 1, other free columns 0.
  std::vector<bool> is_pivot(cols, false);
  for (const std::size_t c : pivot_col) {
    is_pivot[c] = true;
  }
  std::size_t free_col = 0;
  while (free_col < cols && is_pivot[free_col]) {
    ++free_col;
  }
  std::vector<double> lambda(cols, 0.0);
  lambda[free_col] = 1.0;
  for (std::size_t r = 0; r < pivot_col.size(); ++r) {
    lambda[pivot_col[r]] = -m[r][free_col];
  }
  std::vector<double> out(dim, 0.0);
  double total = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (lambda[c] > 0.0) {
      total += lambda[c];
      for (std::size_t r = 0; r < dim; ++r) {
        out[r] += lambda[c] * (*pts[c])[r];
      }
    }
  }
  if (!(total > 0.0)) {
    return *pts[0];
  }
  for (double &x : out) {
    x /= total;
  }
  return out;
}

bool centerpoint_passes(
    const std::vector<Point> &points, const std::vector<double> &c, double delta, Rng &rng
) {
  const std::size_t dim = c.size();
  std::vector<std::uint32_t> test;
  if (points.size() <= kAuditPoints) {
    for (std::uint32_t i = 0; i < points.size(); ++i) {
      test.push_back(i);
    }
  } else {
    for (std::size_t i = 0; i < kAuditPoints; ++i) {
      test.push_back(static_cast<std::uint32_t>(rng.below(points.size())));
    }
  }
  const double m = static_cast<double>(test.size());
  const double allowed = delta * m + 2.0 * std::sqrt(m) + 1.0;
  std::vector<double> offsets;
  offsets.reserve(test.size() * dim);
  for (const std::uint32_t i : test) {
    for (std::size_t j = 0; j < dim; ++j) {
      offsets.push_back(points[i][j] - c[j]);
    }
  }
  for (int h = 0; h < kAuditPlanes; ++h) {
    const std::vector<double> normal = random_unit(rng, dim);
    std::size_t above = 0;
    std::size_t below = 0;
    for (std::size_t i = 0; i < offsets.size(); i += dim) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        s += normal[j] * offsets[i + j];
      }
      above += s > 0.0;
      below += s < 0.0;
    }
    if (static_cast<double>(std::max(above, below)) > allowed) {
      return false;
    }
  }
  return true;
}

/// Coordinate-wise median (lower median).
std::vector<double> coordinate_median(const std::vector<Point> &pts, std::size_t dim) {
  std::vector<double> med(dim);
  std::vector<double> column(pts.size());
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      column[i] = pts[i][j];
    }
    const auto mid = column.begin() + static_cast<std::ptrdiff_t>((column.size() - 1) / 2);
    std::nth_element(column.begin(), mid, column.end());
    med[j] = *mid;
  }
  return med;
}

/// Hyperplane {u : n.u = t} through c, drawn so that it becomes a uniform
/// great circle after the normalizing rotation and dilation.
void draw_plane(const std::vector<double> &c, Rng &rng, std::vector<double> &n, double &t) {
  const std::size_t dim = c.size();
  double gamma = 0.0;
  for (const double x : c) {
    gamma += x * x;
  }
  gamma = std::sqrt(gamma);
  if (gamma > 1.0 - 1e-9) {
    n = random_unit(rng, dim);
    t = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      t += n[j] * c[j];
    }
    return;
  }
  std::vector<double> m;
  do {
    m = random_unit(rng, dim);
  } while (std::abs(m[dim - 1]) < 1e-9);
  const double lambda = std::sqrt((1.0 - gamma) / (1.0 + gamma));
  std::vector<double> rotated(dim);
  for (std::size_t j = 0; j + 1 < dim; ++j) {
    rotated[j] = m[j] * lambda * (1.0 + gamma) / m[dim - 1];
  }
  rotated[dim - 1] = 1.0;
  t = -gamma;
  n = rotated;
  if (gamma < 1e-15) {
    t = 0.0;
    return;
  }
  // Householder reflection sending c/|c| to the south pole; it is its own
  // transpose, so it also carries the rotated normal back.
  std::vector<double> v(dim);
  double v2 = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    v[j] = c[j] / gamma + (j + 1 == dim ? 1.0 : 0.0);
    v2 += v[j] * v[j];
  }
  if (v2 < 1e-18) {
    return;
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    dot += v[j] * rotated[j];
  }
  for (std::size_t j = 0; j < dim; ++j) {
    n[j] = rotated[j] - 2.0 * dot / v2 * v[j];
  }
}

} // namespace

double default_delta(std::size_t d) {
  return static_cast<double>(d + 1) / static_cast<double>(d + 2) + 0.02;
}

Point centerpoint_approx(const std::vector<Point> &points, double delta, std::uint64_t seed) {
  if (points.empty()) {
    throw ContractError("separators", "centerpoint of an empty set");
  }
  const std::size_t dim = points[0].dim();
  if (!(delta > static_cast<double>(dim) / static_cast<double>(dim + 1) && delta < 1.0)) {
    throw ContractError(
        "separators", "centerpoint delta must lie in (" + std::to_string(dim) + "/" +
                          std::to_string(dim + 1) + ", 1)"
    );
  }
  if (points.size() == 1) {
    return points[0];
  }
  Rng rng(seed);
  if (points.size() < dim + 2) {
    std::vector<double> c(dim, 0.0);
    for (const Point &p : points) {
      for (std::size_t j = 0; j < dim; ++j) {
        c[j] += p[j] / static_cast<double>(points.size());
      }
    }
    return Point(std::move(c));
  }
  std::size_t sample_size = 1;
  for (std::size_t l = 0; l < kRadonLevels; ++l) {
    sample_size *= dim + 2;
  }
  for (int attempt = 0; attempt < kInnerDraws * kOuterRestarts; ++attempt) {
    std::vector<std::vector<double>> level;
    level.reserve(sample_size);
    for (std::size_t i = 0; i < sample_size; ++i) {
      level.push_back(points[rng.below(points.size())].coords());
    }
    while (level.size() > 1) {
      std::vector<std::vector<double>> next;
      std::vector<const std::vector<double> *> group;
      for (std::size_t i = 0; i + dim + 2 <= level.size(); i += dim + 2) {
        group.clear();
        for (std::size_t k = 0; k < dim + 2; ++k) {
          group.push_back(&level[i + k]);
        }
        next.push_back(radon_point(group, dim));
      }
      level = std::move(next);
    }
    if (centerpoint_passes(points, level[0], delta, rng)) {
      return Point(std::move(level[0]));
    }
  }
  throw ContractError("separators", "centerpoint_approx: audit failed on every attempt");
}

SeparatorCut mttv_separator(const NeighborhoodSystem &sys, double delta, std::uint64_t seed) {
  if (sys.kind != SystemKind::ball) {
    throw ContractError("separators", "mttv_separator needs a ball system");
  }
  const std::size_t d = sys.dim;
  const double lo = static_cast<double>(d + 1) / static_cast<double>(d + 2);
  if (!(delta > lo && delta < 1.0)) {
    throw ContractError("separators", "mttv delta must lie in ((d+1)/(d+2), 1)");
  }
  const std::size_t n = sys.size();
  SeparatorCut cut;
  if (n == 0) {
    cut.surface = make_sphere(Point(d), 1.0);
    return cut;
  }
  std::vector<Point> centers;
  centers.reserve(n);
  for (const Ball &b : sys.balls) {
    centers.push_back(b.center);
  }
  if (n == 1) {
    // One ball cannot be balanced; a sphere through its center holds it in S.
    std::vector<double> c = centers[0].coords();
    c[0] -= 1.0;
    cut.surface = make_sphere(Point(std::move(c)), 1.0);
    cut.S = {0};
    cut.cut_object_ids = {0};
    cut.attempts = 1;
    return cut;
  }

  const std::vector<double> origin = coordinate_median(centers, d);
  std::vector<double> radii(n);
  for (std::size_t i = 0; i < n; ++i) {
    radii[i] = distance(centers[i], origin);
  }
  const auto mid = radii.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(radii.begin(), mid, radii.end());
  double scale = *mid;
  if (!(scale > 0.0)) {
    scale = *std::max_element(radii.begin(), radii.end());
  }
  if (!(scale > 0.0)) {
    scale = 1.0;
  }
  std::vector<Point> lifted;
  lifted.reserve(n);
  for (const Point &p : centers) {
    lifted.push_back(stereographic_lift(p, origin, scale));
  }
  Rng rng(seed);
  const Point c = centerpoint_approx(lifted, delta, rng.fork());

  const auto limit = delta * static_cast<double>(n);
  std::vector<double> normal;
  double t = 0.0;
  for (int attempt = 0; attempt < kInnerDraws * kOuterRestarts; ++attempt) {
    ++cut.attempts;
    draw_plane(c.coords(), rng, normal, t);
    double a2 = 0.0;
    double n2 = 0.0;
    for (std::size_t j = 0; j <= d; ++j) {
      n2 += normal[j] * normal[j];
      if (j < d) {
        a2 += normal[j] * normal[j];
      }
    }
    const double denom = normal[d] - t;
    if (std::abs(denom) < 1e-12 * std::sqrt(n2)) {
      continue;
    }
    std::vector<double> sc(d);
    for (std::size_t j = 0; j < d; ++j) {
      sc[j] = origin[j] - scale * normal[j] / denom;
    }
    const double rad = scale * std::sqrt(std::max(0.0, n2 - t * t)) / std::abs(denom);
    if (!(rad > 0.0) || !std::isfinite(rad)) {
      continue;
    }
    const Sphere sphere = make_sphere(Point(std::move(sc)), rad);
    std::vector<VertexId> in;
    std::vector<VertexId> out;
    std::vector<VertexId> on;
    for (VertexId i = 0; i < n; ++i) {
      if (sphere_cuts_ball(sphere, sys.balls[i])) {
        on.push_back(i);
      } else if (distance(sphere.center, sys.balls[i].center) < sphere.radius) {
        in.push_back(i);
      } else {
        out.push_back(i);
      }
    }
    if (static_cast<double>(in.size()) <= limit && static_cast<double>(out.size()) <= limit) {
      cut.surface = sphere;
      cut.cut_object_ids = on;
      cut.S = std::move(on);
      cut.A = std::move(in);
      cut.B = std::move(out);
      return cut;
    }
  }
  throw ContractError(
      "separators", "mttv_separator: no balanced sphere after " + std::to_string(cut.attempts) +
                        " attempts (n=" + std::to_string(n) + ")"
  );
}

} // namespace geosssp

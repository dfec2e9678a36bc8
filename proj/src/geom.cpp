/*******************************************************************************
 * @file:   geom.cpp
 ******************************************************************************/
#include "geosssp/geom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geosssp/error.hpp"

namespace geosssp {

namespace {

void require_finite(PointView p) {
  for (const double x : p) {
    if (!std::isfinite(x)) {
      throw ContractError("geom", "non-finite coordinate");
    }
  }
}

} // namespace

Point::Point(std::vector<double> coords) : _coords(std::move(coords)) {
  require_finite(_coords);
}

Point::Point(std::initializer_list<double> coords) : _coords(coords) {
  require_finite(_coords);
}

Point Cube::center() const {
  Point c = corner;
  for (std::size_t j = 0; j < c.dim(); ++j) {
    c[j] += 0.5 * side;
  }
  return c;
}

double Rect::aspect_ratio() const {
  double lo_side = hi[0] - lo[0];
  double hi_side = lo_side;
  for (std::size_t j = 1; j < lo.dim(); ++j) {
    lo_side = std::min(lo_side, hi[j] - lo[j]);
    hi_side = std::max(hi_side, hi[j] - lo[j]);
  }
  return hi_side / lo_side;
}

Ball make_ball(Point center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw ContractError("geom", "ball radius must be finite and >= 0");
  }
  return Ball{std::move(center), radius};
}

Cube make_cube(Point corner, double side) {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw ContractError("geom", "cube side must be finite and > 0");
  }
  return Cube{std::move(corner), side};
}

Sphere make_sphere(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ContractError("geom", "sphere radius must be finite and > 0");
  }
  return Sphere{std::move(center), radius};
}

Rect make_rect(Point lo, Point hi) {
  require_same_dim(lo, hi);
  for (std::size_t j = 0; j < lo.dim(); ++j) {
    if (!(lo[j] < hi[j])) {
      throw ContractError("geom", "rect requires lo < hi in every coordinate");
    }
  }
  return Rect{std::move(lo), std::move(hi)};
}

void require_same_dim(PointView p, PointView q) {
  if (p.size() != q.size()) {
    throw ContractError(
        "geom", "dimension mismatch (" + std::to_string(p.size()) + " vs " +
                    std::to_string(q.size()) + ")"
    );
  }
}

double squared_distance(PointView p, PointView q) {
  require_same_dim(p, q);
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double t = p[j] - q[j];
    s += t * t;
  }
  return s;
}

double distance(PointView p, PointView q) {
  return std::sqrt(squared_distance(p, q));
}

bool ball_cuts_segment(const Ball &b, PointView p, PointView q) {
  require_same_dim(p, q);
  const bool p_in = distance(b.center, p) < b.radius;
  const bool q_in = distance(b.center, q) < b.radius;
  return p_in != q_in;
}

bool sphere_cuts_ball(const Sphere &s, const Ball &b) {
  const double d = distance(s.center, b.center);
  return std::abs(d - s.radius) < b.radius;
}

bool rect_cuts_cube(const Rect &r, const Cube &c) {
  require_same_dim(r.lo, c.corner);
  bool contained = true;
  bool disjoint = false;
  for (std::size_t j = 0; j < c.corner.dim(); ++j) {
    const double a = c.corner[j];
    const double b = c.corner[j] + c.side;
    if (a < r.lo[j] || b > r.hi[j]) {
      contained = false;
    }
    if (b <= r.lo[j] || a >= r.hi[j]) {
      disjoint = true;
    }
  }
  return !contained && !disjoint;
}

bool surface_contains(const Surface &surface, PointView p) {
  return std::visit(
      [&](const auto &s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Rect>) {
          require_same_dim(s.lo, p);
          for (std::size_t j = 0; j < p.size(); ++j) {
            if (!(s.lo[j] < p[j] && p[j] < s.hi[j])) {
              return false;
            }
          }
          return true;
        } else {
          return distance(s.center, p) < s.radius;
        }
      },
      surface
  );
}

bool balls_intersect(const Ball &a, const Ball &b) {
  return distance(a.center, b.center) <= a.radius + b.radius;
}

bool cubes_intersect(const Cube &a, const Cube &b) {
  require_same_dim(a.corner, b.corner);
  for (std::size_t j = 0; j < a.corner.dim(); ++j) {
    if (a.corner[j] + a.side < b.corner[j] || b.corner[j] + b.side < a.corner[j]) {
      return false;
    }
  }
  return true;
}

Point stereographic_lift(PointView p, PointView origin, double scale) {
  require_same_dim(p, origin);
  if (!(scale > 0.0)) {
    throw ContractError("geom", "stereographic scale must be > 0");
  }
  const std::size_t d = p.size();
  std::vector<double> y(d);
  double norm2 = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    y[j] = (p[j] - origin[j]) / scale;
    norm2 += y[j] * y[j];
  }
  std::vector<double> u(d + 1);
  const double denom = norm2 + 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    u[j] = 2.0 * y[j] / denom;
  }
  u[d] = (norm2 - 1.0) / denom;
  return Point(std::move(u));
}

Point stereographic_unlift(PointView u, PointView origin, double scale) {
  const std::size_t d = origin.size();
  if (u.size() != d + 1) {
    throw ContractError("geom", "lifted point must have dimension d+1");
  }
  const double denom = 1.0 - u[d];
  if (!(denom > 0.0)) {
    throw ContractError("geom", "north pole has no finite preimage");
  }
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) {
    x[j] = origin[j] + scale * u[j] / denom;
  }
  return Point(std::move(x));
}

Sphere great_circle_preimage(PointView normal, PointView origin, double scale) {
  const std::size_t d = origin.size();
  if (normal.size() != d + 1) {
    throw ContractError("geom", "great-circle normal must have dimension d+1");
  }
  const double b = normal[d];
  if (b == 0.0) {
    throw ContractError("geom", "great circle through the north pole maps to a hyperplane");
  }
  // normal . lift(y) = 0  <=>  b |y|^2 + 2 a.y - b = 0  <=>  |y + a/b|^2 = 1 + |a|^2/b^2
  std::vector<double> c(d);
  double a2 = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    c[j] = origin[j] - scale * normal[j] / b;
    a2 += normal[j] * normal[j];
  }
  const double radius = scale * std::sqrt(1.0 + a2 / (b * b));
  return Sphere{Point(std::move(c)), radius};
}

} // namespace geosssp

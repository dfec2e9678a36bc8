/*******************************************************************************
 * Dimension-generic geometric primitives and the cut predicates shared by the
 * separator algorithms.
 *
 * Boundary convention: "inside" is always strict. A point exactly on a
 * surface is outside. Predicates compare with exact floating arithmetic.
 *
 * @file:   geom.hpp
 ******************************************************************************/
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

namespace geosssp {

using PointView = std::span<const double>;

/// A point in R^d; d is a runtime value.
class Point {
public:
  Point() = default;
  explicit Point(std::size_t dim) : _coords(dim, 0.0) {}
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);
  explicit Point(PointView view) : Point(std::vector<double>(view.begin(), view.end())) {}

  [[nodiscard]] std::size_t dim() const { return _coords.size(); }
  [[nodiscard]] double operator[](std::size_t j) const { return _coords[j]; }
  double &operator[](std::size_t j) { return _coords[j]; }
  [[nodiscard]] const std::vector<double> &coords() const { return _coords; }
  [[nodiscard]] PointView view() const { return _coords; }
  operator PointView() const { return _coords; }

  bool operator==(const Point &) const = default;

private:
  std::vector<double> _coords;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

/// Iso-oriented cube given by its minimum corner.
struct Cube {
  Point corner;
  double side = 1.0;

  [[nodiscard]] Point center() const;
};

struct Sphere {
  Point center;
  double radius = 1.0;
};

/// Iso-oriented rectangle [lo, hi].
struct Rect {
  Point lo;
  Point hi;

  [[nodiscard]] double aspect_ratio() const;
};

Ball make_ball(Point center, double radius);
Cube make_cube(Point corner, double side);
Sphere make_sphere(Point center, double radius);
Rect make_rect(Point lo, Point hi);

/// A closed surface used to cut space: a ball boundary, a sphere, or the
/// boundary of a rectangle.
using Surface = std::variant<Ball, Sphere, Rect>;

double distance(PointView p, PointView q);
double squared_distance(PointView p, PointView q);

/// True iff exactly one of p, q lies strictly inside b.
bool ball_cuts_segment(const Ball &b, PointView p, PointView q);

/// True iff b meets both the open interior and the open exterior of s.
bool sphere_cuts_ball(const Sphere &s, const Ball &b);

/// True iff c is neither contained in the closed rectangle nor disjoint from
/// its open interior.
bool rect_cuts_cube(const Rect &r, const Cube &c);

/// Strict containment of a point in the region bounded by a surface.
bool surface_contains(const Surface &surface, PointView p);

/// Closed intersection tests used by the intersection-graph builder.
bool balls_intersect(const Ball &a, const Ball &b);
bool cubes_intersect(const Cube &a, const Cube &b);

/// Stereographic lift of (p - origin) / scale onto the unit sphere in R^{d+1}.
/// The origin maps to the south pole (0, ..., 0, -1).
Point stereographic_lift(PointView p, PointView origin, double scale);

/// Inverse of stereographic_lift. The north pole has no finite preimage.
Point stereographic_unlift(PointView u, PointView origin, double scale);

/// Preimage of the circle {u on the unit sphere : normal . u = 0}. Returns the
/// sphere in R^d whose interior maps to {normal . u < 0} when normal's last
/// component is positive. Requires that last component to be nonzero.
Sphere great_circle_preimage(PointView normal, PointView origin, double scale);

void require_same_dim(PointView p, PointView q);

} // namespace geosssp

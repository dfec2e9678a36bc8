#include <doctest.h>

#include <cmath>

#include "geosssp/error.hpp"
#include "geosssp/geom.hpp"
#include "geosssp/rng.hpp"

using namespace geosssp;

namespace {

Point random_point(Rng &rng, std::size_t d, double lo, double hi) {
  Point p(d);
  for (std::size_t j = 0; j < d; ++j) {
    p[j] = rng.uniform(lo, hi);
  }
  return p;
}

// Uniform sample from the closed ball, boundary included with positive weight.
Point sample_in_ball(Rng &rng, const Ball &b) {
  const std::size_t d = b.center.dim();
  Point dir(d);
  double norm = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    dir[j] = rng.normal();
    norm += dir[j] * dir[j];
  }
  norm = std::sqrt(norm);
  const double t = rng.uniform() < 0.2 ? 1.0 : std::pow(rng.uniform(), 1.0 / d);
  Point p = b.center;
  for (std::size_t j = 0; j < d; ++j) {
    p[j] += b.radius * t * dir[j] / norm;
  }
  return p;
}

} // namespace

TEST_CASE("distance examples") {
  CHECK(distance(Point{0, 0}, Point{0, 0}) == 0.0);
  CHECK(distance(Point{0, 0}, Point{3, 4}) == 5.0);
  CHECK(distance(Point{0, 0, 0}, Point{1, 1, 1}) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK_THROWS_AS((void)distance(Point{0, 0}, Point{1, 1, 1}), ContractError);
}

TEST_CASE("distance is a metric on random triples") {
  Rng rng(7);
  for (int it = 0; it < 2000; ++it) {
    const std::size_t d = 2 + it % 3;
    const Point a = random_point(rng, d, -10, 10);
    const Point b = random_point(rng, d, -10, 10);
    const Point c = random_point(rng, d, -10, 10);
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST_CASE("constructors reject bad parameters") {
  CHECK_THROWS_AS(make_ball(Point{0, 0}, -1.0), ContractError);
  CHECK_THROWS_AS(make_cube(Point{0, 0}, 0.0), ContractError);
  CHECK_THROWS_AS(make_sphere(Point{0, 0}, 0.0), ContractError);
  CHECK_THROWS_AS(make_rect(Point{0, 0}, Point{1, 0}), ContractError);
  CHECK_THROWS_AS(Point({0.0, std::nan("")}), ContractError);
}

TEST_CASE("ball_cuts_segment") {
  const Ball b = make_ball(Point{0, 0}, 1.0);
  CHECK(ball_cuts_segment(b, Point{0, 0}, Point{2, 0}));
  CHECK_FALSE(ball_cuts_segment(b, Point{0.1, 0}, Point{0, 0.1}));
  CHECK_FALSE(ball_cuts_segment(b, Point{2, 0}, Point{3, 0}));
  // A point on the sphere counts as outside.
  CHECK(ball_cuts_segment(b, Point{0, 0}, Point{1, 0}));
  CHECK_FALSE(ball_cuts_segment(b, Point{1, 0}, Point{0, 2}));
}

TEST_CASE("sphere_cuts_ball") {
  const Sphere s = make_sphere(Point{0, 0}, 2.0);
  CHECK(sphere_cuts_ball(s, make_ball(Point{2, 0}, 0.5)));
  CHECK_FALSE(sphere_cuts_ball(s, make_ball(Point{5, 0}, 0.5)));
  CHECK_FALSE(sphere_cuts_ball(s, make_ball(Point{0, 0}, 1.0)));
  // Tangent from inside touches the surface but not the exterior.
  CHECK_FALSE(sphere_cuts_ball(s, make_ball(Point{1, 0}, 1.0)));
}

TEST_CASE("sphere_cuts_ball agrees with sampling") {
  Rng rng(11);
  int cuts = 0;
  for (int it = 0; it < 400; ++it) {
    const Sphere s = make_sphere(random_point(rng, 2, -1, 1), rng.uniform(0.5, 2.0));
    const Ball b = make_ball(random_point(rng, 2, -3, 3), rng.uniform(0.05, 1.0));
    bool in = false;
    bool out = false;
    for (int k = 0; k < 4000; ++k) {
      const Point p = sample_in_ball(rng, b);
      const double dist = distance(p, s.center);
      in = in || dist < s.radius - 1e-9;
      out = out || dist > s.radius + 1e-9;
    }
    // Sampling can only miss a side, never invent one.
    if (in && out) {
      CHECK(sphere_cuts_ball(s, b));
    }
    const double gap = std::abs(distance(s.center, b.center) - s.radius) - b.radius;
    if (std::abs(gap) > 1e-3) {
      CHECK(sphere_cuts_ball(s, b) == (in && out));
    }
    cuts += sphere_cuts_ball(s, b) ? 1 : 0;
  }
  CHECK(cuts > 20);
}

TEST_CASE("rect_cuts_cube") {
  const Rect r = make_rect(Point{0, 0}, Point{4, 4});
  CHECK_FALSE(rect_cuts_cube(r, make_cube(Point{1, 1}, 1)));
  CHECK(rect_cuts_cube(r, make_cube(Point{3.5, 1}, 1)));
  CHECK_FALSE(rect_cuts_cube(r, make_cube(Point{5, 5}, 1)));
  // Touching faces from outside do not meet the open interior.
  CHECK_FALSE(rect_cuts_cube(r, make_cube(Point{4, 1}, 1)));
  // Flush with the boundary from inside is contained.
  CHECK_FALSE(rect_cuts_cube(r, make_cube(Point{3, 3}, 1)));
  CHECK(rect_cuts_cube(r, make_cube(Point{-1, -1}, 6)));
}

TEST_CASE("surface_contains is strict") {
  const Surface ball = make_ball(Point{0, 0}, 1.0);
  CHECK(surface_contains(ball, Point{0.5, 0}));
  CHECK_FALSE(surface_contains(ball, Point{1, 0}));
  const Surface rect = make_rect(Point{0, 0}, Point{1, 1});
  CHECK(surface_contains(rect, Point{0.5, 0.5}));
  CHECK_FALSE(surface_contains(rect, Point{0, 0.5}));
}

TEST_CASE("intersection predicates are closed") {
  CHECK(balls_intersect(make_ball(Point{0, 0}, 1), make_ball(Point{2, 0}, 1)));
  CHECK_FALSE(balls_intersect(make_ball(Point{0, 0}, 1), make_ball(Point{2.001, 0}, 1)));
  CHECK(cubes_intersect(make_cube(Point{0, 0}, 1), make_cube(Point{1, 1}, 1)));
  CHECK_FALSE(cubes_intersect(make_cube(Point{0, 0}, 1), make_cube(Point{1.01, 0}, 1)));
}

TEST_CASE("stereographic lift") {
  const Point o{0, 0};
  const Point south = stereographic_lift(Point{0, 0}, o, 1.0);
  CHECK(south == Point{0, 0, -1});
  Rng rng(3);
  for (int it = 0; it < 1000; ++it) {
    const std::size_t d = 2 + it % 2;
    const Point origin = random_point(rng, d, -5, 5);
    const double scale = rng.uniform(0.1, 10);
    const Point p = random_point(rng, d, -20, 20);
    const Point u = stereographic_lift(p, origin, scale);
    double norm = 0.0;
    for (const double x : u.coords()) {
      norm += x * x;
    }
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
    const Point back = stereographic_unlift(u, origin, scale);
    CHECK(distance(back, p) <= 1e-9 * (1 + distance(p, origin)));
  }
  CHECK_THROWS_AS(stereographic_unlift(Point{0, 0, 1}, o, 1.0), ContractError);
}

TEST_CASE("great circle preimage maps sides consistently") {
  Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    const Point origin = random_point(rng, 2, -1, 1);
    const double scale = rng.uniform(0.5, 2);
    Point normal(3);
    for (std::size_t j = 0; j < 3; ++j) {
      normal[j] = rng.normal();
    }
    if (normal[2] < 0) {
      for (std::size_t j = 0; j < 3; ++j) {
        normal[j] = -normal[j];
      }
    }
    if (normal[2] < 1e-3) {
      continue;
    }
    const Sphere s = great_circle_preimage(normal, origin, scale);
    for (int k = 0; k < 50; ++k) {
      const Point p = random_point(rng, 2, -10, 10);
      const Point u = stereographic_lift(p, origin, scale);
      double dot = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        dot += normal[j] * u[j];
      }
      const double margin = std::abs(distance(p, s.center) - s.radius);
      if (std::abs(dot) > 1e-9 && margin > 1e-9 * s.radius) {
        CHECK((dot < 0) == (distance(p, s.center) < s.radius));
      }
    }
  }
}

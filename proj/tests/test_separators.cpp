#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "geosssp/error.hpp"
#include "geosssp/generators.hpp"
#include "geosssp/separators.hpp"
#include "support.hpp"

using namespace geosssp;
using namespace geosssp::testing;

namespace {

EuclideanGraph spanner(std::size_t n, std::size_t d, std::uint64_t seed) {
  return greedy_spanner(gen_points(n, d, PointDistribution::uniform_cube, seed), 1.5);
}

// Largest share of points on one closed side over random hyperplanes through c.
double worst_split(const std::vector<Point> &points, const Point &c, int planes, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = c.dim();
  std::size_t worst = 0;
  for (int k = 0; k < planes; ++k) {
    std::vector<double> normal(d);
    for (double &x : normal) {
      x = rng.normal();
    }
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (const Point &p : points) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        dot += normal[j] * (p[j] - c[j]);
      }
      pos += dot > 0 ? 1 : 0;
      neg += dot < 0 ? 1 : 0;
    }
    worst = std::max({worst, pos, neg});
  }
  return static_cast<double>(worst) / static_cast<double>(points.size());
}

void check_lanky_structure(const EuclideanGraph &g, const SeparatorCut &cut) {
  const Ball &ball = std::get<Ball>(cut.surface);
  std::vector<VertexId> ends;
  std::size_t cut_edges = 0;
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (ball_cuts_segment(ball, g.point(g.edge(e).u), g.point(g.edge(e).v))) {
      ++cut_edges;
      ends.push_back(g.edge(e).u);
      ends.push_back(g.edge(e).v);
    }
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::vector<VertexId> s = cut.S;
  std::sort(s.begin(), s.end());
  CHECK(s == ends);
  CHECK(cut.cut_object_ids.size() == cut_edges);
  for (const VertexId a : cut.A) {
    CHECK(surface_contains(cut.surface, g.point(a)));
  }
  for (const VertexId b : cut.B) {
    CHECK_FALSE(surface_contains(cut.surface, g.point(b)));
  }
}

void check_mttv_structure(const NeighborhoodSystem &sys, const SeparatorCut &cut) {
  const Sphere &s = std::get<Sphere>(cut.surface);
  for (const VertexId v : cut.S) {
    CHECK(sphere_cuts_ball(s, sys.balls[v]));
  }
  for (const VertexId v : cut.A) {
    CHECK(distance(s.center, sys.balls[v].center) + sys.balls[v].radius <= s.radius);
  }
  for (const VertexId v : cut.B) {
    CHECK(distance(s.center, sys.balls[v].center) - sys.balls[v].radius >= s.radius);
  }
}

void check_sw_structure(const NeighborhoodSystem &sys, const SeparatorCut &cut) {
  const Rect &r = std::get<Rect>(cut.surface);
  for (const VertexId v : cut.S) {
    CHECK(rect_cuts_cube(r, sys.cubes[v]));
  }
  for (const VertexId v : cut.A) {
    const Cube &c = sys.cubes[v];
    for (std::size_t j = 0; j < c.corner.dim(); ++j) {
      CHECK(r.lo[j] <= c.corner[j]);
      CHECK(c.corner[j] + c.side <= r.hi[j]);
    }
  }
  for (const VertexId v : cut.B) {
    CHECK_FALSE(rect_cuts_cube(r, sys.cubes[v]));
  }
}

} // namespace

TEST_CASE("validate_separator") {
  const auto tri = EuclideanGraph::with_lengths(2, {0, 0, 1, 0, 0, 1}, {{0, 1}, {1, 2}, {0, 2}});
  SeparatorCut all;
  all.A = {0, 1, 2};
  CHECK(validate_separator(tri, all, 1.0).valid);
  CHECK_FALSE(validate_separator(tri, all, 0.9).valid);
  SeparatorCut split;
  split.A = {0};
  split.B = {1};
  split.S = {2};
  CHECK(validate_separator(tri, split, 1.0).valid == false);
  split.S = {};
  CHECK_THROWS_AS(validate_separator(tri, split, 1.0), ContractError);
  split.S = {2, 2};
  CHECK_THROWS_AS(validate_separator(tri, split, 1.0), ContractError);
  const auto path = path_graph({1, 1});
  SeparatorCut mid;
  mid.A = {0};
  mid.S = {1};
  mid.B = {2};
  const auto rep = validate_separator(path, mid, 0.5);
  CHECK(rep.valid);
  CHECK(rep.sep_size == 1);
  CHECK(rep.balance == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("lanky separator on tiny graphs") {
  const auto edge = EuclideanGraph::with_lengths(2, {0, 0, 1, 0}, {{0, 1}});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto cut = lanky_separator(edge, default_lanky_params(2), seed);
    CHECK(validate_separator(edge, cut, 1.0).valid);
    CHECK(cut.S.size() <= 2);
  }
  const auto line = path_graph({1, 1, 1, 1, 1, 1, 1, 1, 1});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cut = lanky_separator(line, default_lanky_params(2), seed);
    CHECK(separates(line, cut.S, cut.A, cut.B));
    check_lanky_structure(line, cut);
  }
}

TEST_CASE("lanky separator balance on a large spanner") {
  const auto g = spanner(10000, 2, 77);
  const LankyParams params = default_lanky_params(2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto cut = lanky_separator(g, params, seed);
    const auto rep = validate_separator(g, cut, lanky_balance_bound(params));
    CHECK(rep.valid);
    check_lanky_structure(g, cut);
    CHECK(rep.sep_size < 2000);
  }
}

TEST_CASE("centerpoint_approx") {
  // Regular simplex in R^3.
  const std::vector<Point> simplex{
      Point{1, 1, 1}, Point{1, -1, -1}, Point{-1, 1, -1}, Point{-1, -1, 1}};
  const Point c = centerpoint_approx(simplex, 0.77, 3);
  CHECK(worst_split(simplex, c, 1000, 1) <= 0.75);

  const std::vector<Point> one{Point{0.3, 0.4, 0.5}};
  CHECK(centerpoint_approx(one, 0.77, 1) == one[0]);

  Rng rng(9);
  std::vector<Point> sphere;
  for (int i = 0; i < 10000; ++i) {
    Point p(3);
    double norm = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      p[j] = rng.normal();
      norm += p[j] * p[j];
    }
    for (std::size_t j = 0; j < 3; ++j) {
      p[j] /= std::sqrt(norm);
    }
    sphere.push_back(p);
  }
  const Point center = centerpoint_approx(sphere, 0.9, 4);
  CHECK(worst_split(sphere, center, 1000, 2) <= 0.9);
}

TEST_CASE("mttv separator examples") {
  NeighborhoodSystem pair;
  pair.balls = {make_ball(Point{0, 0}, 1), make_ball(Point{10, 0}, 1)};
  const auto pair_graph = intersection_graph(pair);
  bool clean = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cut = mttv_separator(pair, default_delta(2), seed);
    CHECK(validate_separator(pair_graph, cut, default_delta(2)).valid);
    clean = clean || cut.S.empty();
  }
  CHECK(clean);

  NeighborhoodSystem stack;
  for (int i = 0; i < 8; ++i) {
    stack.balls.push_back(make_ball(Point{0.5, 0.5}, 0.25));
  }
  const auto cut = mttv_separator(stack, default_delta(2), 1);
  CHECK(cut.S.size() == 8);
  CHECK(validate_separator(intersection_graph(stack), cut, 1.0).valid);

  CHECK_THROWS_AS(mttv_separator(pair, 0.5, 1), ContractError);
  CHECK_THROWS_AS(mttv_separator(gen_cubes(10, 2, 2, 1), 0.8, 1), ContractError);
}

TEST_CASE("mttv separator on k-ply systems") {
  const auto sys = gen_kply(4096, 2, 4, 21);
  const auto g = intersection_graph(sys);
  std::vector<std::uint32_t> attempts;
  for (std::uint64_t seed = 1; seed <= 21; ++seed) {
    const auto cut = mttv_separator(sys, default_delta(2), seed);
    const auto rep = validate_separator(g, cut, default_delta(2));
    CHECK(rep.valid);
    CHECK(separates(g, cut.S, cut.A, cut.B));
    check_mttv_structure(sys, cut);
    attempts.push_back(cut.attempts);
  }
  std::nth_element(attempts.begin(), attempts.begin() + 10, attempts.end());
  CHECK(attempts[10] <= 2);
}

TEST_CASE("sw separator examples") {
  NeighborhoodSystem two;
  two.kind = SystemKind::cube;
  for (int i = 0; i < 10; ++i) {
    two.cubes.push_back(make_cube(Point{0.1 * i, 0.0}, 0.05));
    two.cubes.push_back(make_cube(Point{100 + 0.1 * i, 0.0}, 0.05));
  }
  const auto g = intersection_graph(two);
  bool clean = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cut = sw_separator(two, kDefaultEpsilon, seed);
    CHECK(validate_separator(g, cut, sw_balance_bound(kDefaultEpsilon)).valid);
    clean = clean || cut.S.empty();
  }
  CHECK(clean);

  NeighborhoodSystem one;
  one.kind = SystemKind::cube;
  one.cubes = {make_cube(Point{0, 0}, 1)};
  const auto single = sw_separator(one, kDefaultEpsilon, 1);
  CHECK(validate_separator(intersection_graph(one), single, 1.0).valid);
  CHECK_THROWS_AS(sw_separator(one, 0.5, 1), ContractError);
}

TEST_CASE("sw separator on cube systems") {
  const auto sys = gen_cubes(4096, 2, 4, 5);
  const auto g = intersection_graph(sys);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto cut = sw_separator(sys, kDefaultEpsilon, seed);
    CHECK(validate_separator(g, cut, sw_balance_bound(kDefaultEpsilon)).valid);
    CHECK(separates(g, cut.S, cut.A, cut.B));
    check_sw_structure(sys, cut);
  }
}

TEST_CASE("every emitted cut is valid over random instances") {
  Rng rng(2024);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 50 + rng.below(1500);
    const std::size_t d = 2 + rng.below(2);
    const std::uint64_t seed = rng.next_u64();
    switch (it % 3) {
    case 0: {
      const auto g = spanner(n, d, seed);
      const LankyParams params = default_lanky_params(d);
      const auto cut = lanky_separator(g, params, seed);
      CHECK(validate_separator(g, cut, lanky_balance_bound(params)).valid);
      CHECK(separates(g, cut.S, cut.A, cut.B));
      break;
    }
    case 1: {
      const auto sys = gen_kply(n, d, 2 + rng.below(4), seed);
      const auto g = intersection_graph(sys);
      const auto cut = mttv_separator(sys, default_delta(d), seed);
      CHECK(validate_separator(g, cut, default_delta(d)).valid);
      CHECK(separates(g, cut.S, cut.A, cut.B));
      break;
    }
    default: {
      const auto sys = gen_cubes(n, d, 2 + rng.below(4), seed);
      const auto g = intersection_graph(sys);
      const auto cut = sw_separator(sys, kDefaultEpsilon, seed);
      CHECK(validate_separator(g, cut, sw_balance_bound(kDefaultEpsilon)).valid);
      CHECK(separates(g, cut.S, cut.A, cut.B));
      break;
    }
    }
  }
}

TEST_CASE("separators are deterministic per seed") {
  const auto g = spanner(500, 2, 3);
  const auto a = lanky_separator(g, default_lanky_params(2), 8);
  const auto b = lanky_separator(g, default_lanky_params(2), 8);
  CHECK(a.S == b.S);
  CHECK(a.A == b.A);
  const auto sys = gen_kply(500, 2, 4, 3);
  CHECK(mttv_separator(sys, 0.8, 8).S == mttv_separator(sys, 0.8, 8).S);
}

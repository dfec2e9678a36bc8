#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "geosssp/division.hpp"
#include "geosssp/error.hpp"
#include "geosssp/generators.hpp"
#include "geosssp/serialize.hpp"
#include "support.hpp"

using namespace geosssp;
using namespace geosssp::testing;

namespace {

EuclideanGraph spanner(std::size_t n, std::uint64_t seed) {
  return greedy_spanner(gen_points(n, 2, PointDistribution::uniform_cube, seed), 1.5);
}

SeparatorBackend lanky_backend(const EuclideanGraph &work) {
  SeparatorBackend b;
  b.cls = GraphClass::lanky;
  b.work = &work;
  b.lanky = default_lanky_params(work.dim());
  return b;
}

std::vector<VertexId> all_ids(std::size_t n) {
  std::vector<VertexId> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

// Every vertex in two or more pieces, or inherited, is boundary wherever it appears.
void check_pieces(
    const std::vector<Piece> &pieces, const std::vector<VertexId> &R,
    const std::vector<VertexId> &inherited, std::size_t n
) {
  std::vector<int> count(n, 0);
  for (const Piece &p : pieces) {
    CHECK(std::is_sorted(p.vertices.begin(), p.vertices.end()));
    CHECK(std::includes(p.vertices.begin(), p.vertices.end(), p.boundary.begin(), p.boundary.end()));
    for (const VertexId v : p.vertices) {
      ++count[v];
    }
  }
  for (const VertexId v : R) {
    CHECK(count[v] >= 1);
  }
  for (const Piece &p : pieces) {
    for (const VertexId v : p.vertices) {
      const bool must = count[v] >= 2 || std::find(inherited.begin(), inherited.end(), v) != inherited.end();
      if (must) {
        CHECK(std::binary_search(p.boundary.begin(), p.boundary.end(), v));
      }
    }
  }
}

DivisionTree grid_tree(bool mark_shared) {
  // 4x4 grid, vertex 4y + x. Regions: columns 0..2 and columns 2..3.
  std::vector<double> coords;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId y = 0; y < 4; ++y) {
    for (VertexId x = 0; x < 4; ++x) {
      coords.push_back(x);
      coords.push_back(y);
      if (x + 1 < 4) {
        pairs.emplace_back(4 * y + x, 4 * y + x + 1);
      }
      if (y + 1 < 4) {
        pairs.emplace_back(4 * y + x, 4 * (y + 1) + x);
      }
    }
  }
  DivisionTree t;
  t.work = EuclideanGraph::with_lengths(2, coords, pairs);
  t.map = VertexMap::identity(16);
  t.schedule = make_schedule(16, 2);
  t.level_sizes = {16, 1};
  Region root;
  root.level = 1;
  root.vertices = {0};
  root.members = all_ids(16);
  root.children = {1, 2};
  Region left;
  Region right;
  for (VertexId y = 0; y < 4; ++y) {
    for (VertexId x = 0; x < 4; ++x) {
      if (x <= 2) {
        left.vertices.push_back(4 * y + x);
      }
      if (x >= 2) {
        right.vertices.push_back(4 * y + x);
      }
      if (x == 2 && mark_shared) {
        left.boundary.push_back(4 * y + x);
        right.boundary.push_back(4 * y + x);
      }
    }
  }
  for (Region *r : {&left, &right}) {
    r->level = 0;
    r->parent = 0;
    r->members = r->vertices;
    r->member_boundary = r->boundary;
  }
  t.regions = {root, left, right};
  return t;
}

} // namespace

TEST_CASE("class names round trip") {
  for (const auto c : {GraphClass::lanky, GraphClass::kply, GraphClass::cubes}) {
    CHECK(parse_class(class_name(c)) == c);
  }
  CHECK_THROWS_AS(parse_class("planar"), ConfigError);
}

TEST_CASE("small graphs give a single region") {
  for (const std::size_t n : {1u, 2u, 10u, 16u}) {
    const auto g = n == 1 ? EuclideanGraph(2, {0.5, 0.5}, {}) : spanner(n, n);
    const auto tree = build_recursive_division(g, {});
    CHECK(tree.regions.size() == 1);
    CHECK(tree.regions[0].members.size() == tree.work.n());
    CHECK(validate_division(tree).valid);
  }
}

TEST_CASE("separator_contracted at the base level is the class cut") {
  const auto g = degree3_transform(spanner(800, 3)).first;
  const auto base = base_level(g);
  const auto backend = lanky_backend(g);
  const auto H = all_ids(g.n());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto cut = separator_contracted(H, base, backend, seed);
    std::vector<VertexId> ends;
    for (const Edge &e : g.edges()) {
      if (surface_contains(cut.class_cut.surface, g.point(e.u)) !=
          surface_contains(cut.class_cut.surface, g.point(e.v))) {
        ends.push_back(e.u);
        ends.push_back(e.v);
      }
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    CHECK(cut.S == ends);
    for (const VertexId a : cut.A) {
      CHECK(surface_contains(cut.class_cut.surface, g.point(a)));
    }
    for (const VertexId b : cut.B) {
      CHECK_FALSE(surface_contains(cut.class_cut.surface, g.point(b)));
    }
  }
}

TEST_CASE("separator_contracted on two contracted vertices") {
  const auto g = path_graph({1, 1, 1, 1, 1});
  const auto lvl = contract(base_level(g), 3);
  REQUIRE(lvl.graph.n() == 2);
  const auto cut = separator_contracted({0, 1}, lvl, lanky_backend(g), 1);
  CHECK(separates(lvl.graph, cut.S, cut.A, cut.B));
  CHECK(cut.S.size() + cut.A.size() + cut.B.size() == 2);
}

TEST_CASE("separator_contracted never leaves an A-B edge") {
  const auto g = degree3_transform(spanner(4000, 11)).first;
  const auto all = contract_all(g);
  const auto backend = lanky_backend(g);
  const auto &lvl = all.levels[1];
  const auto H = all_ids(lvl.graph.n());
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto cut = separator_contracted(H, lvl, backend, seed);
    CHECK(separates(lvl.graph, cut.S, cut.A, cut.B));
    CHECK(cut.S.size() + cut.A.size() + cut.B.size() == H.size());
    CHECK(!cut.A.empty());
    CHECK(!cut.B.empty());
  }
}

TEST_CASE("separator_contracted on ball and cube systems") {
  for (const auto cls : {GraphClass::kply, GraphClass::cubes}) {
    const auto sys = cls == GraphClass::kply ? gen_kply(3000, 2, 5, 4) : gen_cubes(3000, 2, 5, 4);
    const auto g = intersection_graph(sys);
    const auto [work, map] = degree3_transform(g);
    SeparatorBackend b;
    b.cls = cls;
    b.work = &work;
    b.sys = &sys;
    b.object_of = &map.backward;
    b.delta = default_delta(2);
    const auto all = contract_all(work);
    const auto &lvl = all.levels[1];
    const auto H = all_ids(lvl.graph.n());
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto cut = separator_contracted(H, lvl, b, seed);
      CHECK(separates(lvl.graph, cut.S, cut.A, cut.B));
    }
  }
}

TEST_CASE("divide") {
  const auto g = degree3_transform(spanner(3000, 5)).first;
  const auto base = base_level(g);
  const auto backend = lanky_backend(g);

  SUBCASE("small region is returned whole") {
    const std::vector<VertexId> R{0, 1, 2};
    const auto pieces = divide(R, {}, 10, 2, base, backend, 1);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].vertices == R);
    CHECK(pieces[0].boundary.empty());
  }
  SUBCASE("disjoint components share no boundary") {
    const auto two = EuclideanGraph::with_lengths(
        2, {0, 0, 1, 0, 2, 0, 10, 0, 11, 0, 12, 0}, {{0, 1}, {1, 2}, {3, 4}, {4, 5}}
    );
    const auto pieces = divide(all_ids(6), {}, 3, 2, base_level(two), lanky_backend(two), 1);
    REQUIRE(pieces.size() == 2);
    for (const Piece &p : pieces) {
      CHECK(p.vertices.size() == 3);
      CHECK(p.boundary.empty());
    }
  }
  SUBCASE("large region") {
    const auto R = all_ids(g.n());
    const std::vector<VertexId> inherited{0, 5, 17};
    DivideLog log;
    const auto pieces = divide(R, inherited, 400, 2, base, backend, 3, &log);
    CHECK(pieces.size() > 1);
    CHECK(!log.calls.empty());
    check_pieces(pieces, R, inherited, g.n());
    std::size_t oversized = 0;
    for (const Piece &p : pieces) {
      CHECK(p.vertices.size() <= kStallFactor * 400);
      oversized += p.vertices.size() > 400 ? 1 : 0;
      if (p.vertices.size() > 400) {
        CHECK(p.flagged);
      }
    }
    CHECK(oversized <= log.stalled);
  }
}

TEST_CASE("bfs fallback splits pieces the class separator cannot") {
  // Dense small cube system in d=3: every surface cuts most objects.
  const auto sys = gen_cubes(544, 3, 5, 17278773331720392691ULL);
  const auto g = intersection_graph(sys);
  DivisionConfig cfg;
  cfg.cls = GraphClass::cubes;
  cfg.sys = &sys;
  cfg.seed = 17278773331720392691ULL;
  const DivisionTree tree = build_recursive_division(g, cfg);
  CHECK(tree.log.fallbacks > 0);
  CHECK(validate_division(tree).edges_covered);
  CHECK(validate_division(tree).boundary_consistent);
}

TEST_CASE("expand") {
  const auto g = degree3_transform(spanner(2000, 7)).first;
  const auto all = contract_all(g);
  const auto &lvl = all.levels[1];
  Piece single;
  single.vertices = {0};
  const Piece e = expand(single, lvl);
  CHECK(e.vertices.size() == lvl.cset[0].size());

  Piece p;
  for (VertexId v = 0; v < lvl.graph.n(); v += 3) {
    p.vertices.push_back(v);
    if (v % 2 == 0) {
      p.boundary.push_back(v);
    }
  }
  const Piece x = expand(p, lvl);
  CHECK(x.vertices.size() <= 3 * lvl.z_used * p.vertices.size());
  CHECK(std::includes(x.vertices.begin(), x.vertices.end(), x.boundary.begin(), x.boundary.end()));
  // Re-contraction recovers the piece.
  std::vector<VertexId> back;
  for (const VertexId u : x.vertices) {
    back.push_back(lvl.owner[u]);
  }
  std::sort(back.begin(), back.end());
  back.erase(std::unique(back.begin(), back.end()), back.end());
  CHECK(back == p.vertices);
}

TEST_CASE("hand-built grid division") {
  const auto good = validate_division(grid_tree(true));
  CHECK(good.valid);
  CHECK(good.edges_covered);
  CHECK(good.boundary_consistent);
  CHECK(good.children_cover);
  const auto bad = validate_division(grid_tree(false));
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.boundary_consistent);

  auto gap = grid_tree(true);
  // Drop column 2 from the right region: edges between columns 2 and 3 are lost.
  Region &right = gap.regions[2];
  right.vertices.erase(
      std::remove_if(right.vertices.begin(), right.vertices.end(), [](VertexId v) { return v % 4 == 2; }),
      right.vertices.end()
  );
  right.members = right.vertices;
  right.boundary.clear();
  right.member_boundary.clear();
  gap.regions[1].boundary.clear();
  gap.regions[1].member_boundary.clear();
  const auto rep = validate_division(gap);
  CHECK_FALSE(rep.edges_covered);
}

TEST_CASE("built divisions validate") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    DivisionConfig cfg;
    cfg.seed = seed;
    const auto tree = build_recursive_division(spanner(1 << 14, seed), cfg);
    const auto rep = validate_division(tree);
    CHECK(rep.valid);
    CHECK(tree.stats.size() >= 2);
    CHECK(tree.top_level() >= 1);
  }
  for (const auto cls : {GraphClass::kply, GraphClass::cubes}) {
    const auto sys = cls == GraphClass::kply ? gen_kply(5000, 2, 5, 2) : gen_cubes(5000, 2, 5, 2);
    DivisionConfig cfg;
    cfg.cls = cls;
    cfg.sys = &sys;
    const auto tree = build_recursive_division(intersection_graph(sys), cfg);
    CHECK(validate_division(tree).valid);
  }
}

TEST_CASE("class systems must match the graph") {
  const auto sys = gen_kply(100, 2, 4, 1);
  DivisionConfig cfg;
  cfg.cls = GraphClass::kply;
  CHECK_THROWS_AS(build_recursive_division(intersection_graph(sys), cfg), ContractError);
  const auto cubes = gen_cubes(100, 2, 4, 1);
  cfg.sys = &cubes;
  CHECK_THROWS_AS(build_recursive_division(intersection_graph(sys), cfg), ContractError);
}

TEST_CASE("division is deterministic per seed") {
  const auto g = spanner(5000, 9);
  DivisionConfig cfg;
  cfg.seed = 42;
  const auto a = dump(to_json(build_recursive_division(g, cfg)));
  const auto b = dump(to_json(build_recursive_division(g, cfg)));
  CHECK(a == b);
}

TEST_CASE("inequality margins") {
  const auto m = inequality_margins(2, 4.0, 8);
  CHECK(m.size() == 8);
  // The margin eventually turns positive and stays so.
  const auto far = inequality_margins(2, 4.0, 64);
  CHECK(far.back() > 0.0);
}

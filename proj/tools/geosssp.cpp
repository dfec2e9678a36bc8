/*******************************************************************************
 * Command-line front end: instance generation, separators, recursive
 * divisions, shortest paths, label comparison and scaling sweeps.
 *
 * Exit codes: 0 success, 1 contract violation, 2 bad configuration.
 *
 * @file:   geosssp.cpp
 ******************************************************************************/
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geosssp/division.hpp"
#include "geosssp/error.hpp"
#include "geosssp/generators.hpp"
#include "geosssp/io.hpp"
#include "geosssp/rng.hpp"
#include "geosssp/separators.hpp"
#include "geosssp/serialize.hpp"
#include "geosssp/sssp.hpp"

using namespace geosssp;

namespace {

struct Options {
  std::size_t n = 1000;
  std::size_t d = 2;
  double t = 1.5;
  std::uint32_t k = 5;
  std::uint32_t kappa = 5;
  std::uint64_t seed = 1;
  std::string distribution = "uniform";
  std::string input;
  std::string graph;
  std::string sys;
  std::string output;
  std::string stats;
  std::string report;
  std::string method = "lanky";
  std::string cls = "lanky";
  std::string engine = "hkrs";
  VertexId source = 0;
  std::uint32_t tau = 1;
  double eta = 0.0;
  double delta = 0.0;
  double eps = kDefaultEpsilon;
  std::uint64_t budget = 0;
  std::string left;
  std::string right;
  double tol = 0.0;
  std::string sweep = "12:17";
  std::vector<std::string> argv;
};

void emit(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    save_text(path, content);
  }
}

Provenance provenance(const Options &o) {
  std::string cmd = "command";
  for (const auto &a : o.argv) {
    cmd += " " + a;
  }
  return {rng_provenance(o.seed), cmd};
}

EuclideanGraph load_graph(const std::string &path) {
  std::istringstream in(load_text(path));
  return read_graph(in);
}

NeighborhoodSystem load_system(const std::string &path) {
  std::istringstream in(load_text(path));
  return read_system(in);
}

std::optional<NeighborhoodSystem> load_optional_system(const Options &o) {
  if (o.sys.empty()) {
    return std::nullopt;
  }
  return load_system(o.sys);
}

/// The graph of a run: an explicit graph file, or the intersection graph of
/// the system for the ball and cube classes.
EuclideanGraph instance_graph(const Options &o, const std::optional<NeighborhoodSystem> &sys) {
  if (!o.graph.empty()) {
    return load_graph(o.graph);
  }
  if (sys) {
    return intersection_graph(*sys);
  }
  throw ConfigError("need --graph or --sys");
}

DivisionConfig division_config(const Options &o, const NeighborhoodSystem *sys) {
  DivisionConfig c;
  c.cls = parse_class(o.cls);
  c.sys = sys;
  c.tau = o.tau;
  c.eta = o.eta;
  c.delta = o.delta;
  c.eps = o.eps;
  c.seed = o.seed;
  return c;
}

PointDistribution parse_distribution(const std::string &s) {
  if (s == "uniform") {
    return PointDistribution::uniform_cube;
  }
  if (s == "clustered") {
    return PointDistribution::clustered;
  }
  throw ConfigError("unknown distribution '" + s + "'");
}

std::string graph_text(const EuclideanGraph &g, const Provenance &p) {
  std::ostringstream out;
  write_graph(out, g, p);
  return out.str();
}

std::string system_text(const NeighborhoodSystem &s, const Provenance &p) {
  std::ostringstream out;
  write_system(out, s, p);
  return out.str();
}

int cmd_separate(const Options &o) {
  SeparatorCut cut;
  SeparatorReport report;
  if (o.method == "lanky") {
    const EuclideanGraph g = load_graph(o.input);
    LankyParams p = default_lanky_params(g.dim());
    p.tau = o.tau;
    if (o.eta > 0.0) {
      p.eta = o.eta;
    }
    cut = lanky_separator(g, p, o.seed);
    report = validate_separator(g, cut, lanky_balance_bound(p));
  } else if (o.method == "mttv" || o.method == "sw") {
    const NeighborhoodSystem sys = load_system(o.input);
    const EuclideanGraph g = intersection_graph(sys);
    if (o.method == "mttv") {
      const double delta = o.delta > 0.0 ? o.delta : default_delta(sys.dim);
      cut = mttv_separator(sys, delta, o.seed);
      report = validate_separator(g, cut, delta);
    } else {
      cut = sw_separator(sys, o.eps, o.seed);
      report = validate_separator(g, cut, sw_balance_bound(o.eps));
    }
  } else {
    throw ConfigError("unknown separator method '" + o.method + "' (expected lanky, mttv or sw)");
  }
  Json j;
  j["method"] = o.method;
  j["seed"] = o.seed;
  j["cut"] = to_json(cut);
  j["report"] = to_json(report);
  emit(o.output, dump(j));
  std::cerr << "separator: |S|=" << report.sep_size << " |A|=" << report.a_size
            << " |B|=" << report.b_size << " valid=" << (report.valid ? "yes" : "no") << "\n";
  return report.valid ? 0 : 1;
}

int cmd_rdiv(const Options &o) {
  const auto sys = load_optional_system(o);
  const EuclideanGraph g = instance_graph(o, sys);
  const DivisionConfig config = division_config(o, sys ? &*sys : nullptr);
  const DivisionTree tree = build_recursive_division(g, config);
  const DivisionReport report = validate_division(tree);
  emit(o.output, dump(to_json(tree)));
  if (!o.report.empty()) {
    emit(o.report, dump(to_json(report)));
  }
  std::cerr << "division: levels=" << tree.top_level() + 1 << " regions=" << tree.regions.size()
            << " valid=" << (report.valid ? "yes" : "no") << "\n";
  return report.valid ? 0 : 1;
}

int cmd_sssp(const Options &o) {
  const auto sys = load_optional_system(o);
  const EuclideanGraph g = instance_graph(o, sys);
  if (o.source >= g.n()) {
    throw ConfigError("source " + std::to_string(o.source) + " out of range");
  }
  std::ostringstream labels;
  Json stats;
  if (o.engine == "dijkstra") {
    DijkstraCounters counters;
    const DistanceLabels l = dijkstra(g, o.source, &counters);
    write_labels(labels, l.dist);
    stats["n"] = g.n();
    stats["m"] = g.m();
    stats["comparisons"] = counters.comparisons;
    stats["relaxations"] = counters.relaxations;
    stats["pushes"] = counters.pushes;
  } else if (o.engine == "hkrs") {
    const DivisionTree tree = build_recursive_division(g, division_config(o, sys ? &*sys : nullptr));
    EngineOptions eo;
    if (o.budget > 0) {
      eo.fixed_budget = o.budget;
    }
    EngineStats es;
    const DistanceLabels l = sssp(tree, o.source, &es, eo);
    write_labels(labels, l.dist);
    stats = to_json(es);
  } else {
    throw ConfigError("unknown engine '" + o.engine + "' (expected hkrs or dijkstra)");
  }
  emit(o.output, labels.str());
  if (!o.stats.empty()) {
    emit(o.stats, dump(stats));
  }
  return 0;
}

int cmd_verify(const Options &o) {
  std::istringstream a_in(load_text(o.left));
  std::istringstream b_in(load_text(o.right));
  const std::vector<double> a = read_labels(a_in);
  const std::vector<double> b = read_labels(b_in);
  if (a.size() != b.size()) {
    std::cerr << "verify: label counts differ (" << a.size() << " vs " << b.size() << ")\n";
    return 1;
  }
  std::size_t bad = 0;
  for (std::size_t v = 0; v < a.size(); ++v) {
    const bool same = a[v] == b[v] ||
                      (std::isfinite(a[v]) && std::isfinite(b[v]) &&
                       std::abs(a[v] - b[v]) <= o.tol * std::max(std::abs(a[v]), std::abs(b[v])));
    if (!same) {
      if (bad < 5) {
        std::cerr << "verify: vertex " << v << ": " << format_real(a[v]) << " vs "
                  << format_real(b[v]) << "\n";
      }
      ++bad;
    }
  }
  std::cerr << "verify: " << a.size() - bad << "/" << a.size() << " labels agree\n";
  return bad == 0 ? 0 : 1;
}

int cmd_bench(const Options &o) {
  const auto colon = o.sweep.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("--sweep expects lo:hi");
  }
  int lo = 0;
  int hi = 0;
  try {
    lo = std::stoi(o.sweep.substr(0, colon));
    hi = std::stoi(o.sweep.substr(colon + 1));
  } catch (const std::exception &) {
    throw ConfigError("--sweep expects integer exponents lo:hi");
  }
  if (lo < 1 || hi < lo || hi > 24) {
    throw ConfigError("--sweep exponents must satisfy 1 <= lo <= hi <= 24");
  }
  const GraphClass cls = parse_class(o.cls);
  struct Row {
    std::size_t n, m;
    EngineStats es;
    DijkstraCounters dc;
    std::size_t sep_max;
    std::vector<std::size_t> regions;
  };
  std::vector<Row> rows;
  std::size_t max_levels = 0;
  for (int e = lo; e <= hi; ++e) {
    const std::size_t n = std::size_t{1} << e;
    const std::uint64_t seed = mix_seed(o.seed, static_cast<std::uint64_t>(e));
    std::optional<NeighborhoodSystem> sys;
    EuclideanGraph g;
    if (cls == GraphClass::lanky) {
      g = greedy_spanner(gen_points(n, o.d, parse_distribution(o.distribution), seed), o.t);
    } else {
      sys = cls == GraphClass::kply ? gen_kply(n, o.d, o.k, seed) : gen_cubes(n, o.d, o.kappa, seed);
      g = intersection_graph(*sys);
    }
    DivisionConfig config = division_config(o, sys ? &*sys : nullptr);
    config.seed = seed;
    const DivisionTree tree = build_recursive_division(g, config);
    Row row{g.n(), g.m(), {}, {}, 0, {}};
    sssp(tree, 0, &row.es);
    dijkstra(g, 0, &row.dc);
    for (const auto &[h, s] : tree.log.calls) {
      row.sep_max = std::max(row.sep_max, s);
    }
    for (const auto &st : tree.stats) {
      row.regions.push_back(st.regions);
    }
    max_levels = std::max(max_levels, row.regions.size());
    rows.push_back(std::move(row));
    std::cerr << "bench: n=" << n << " done\n";
  }
  std::ostringstream csv;
  csv << "n,m,relaxations,key_updates,work_per_n,dijkstra_comparisons,wall_ms,sep_max";
  for (std::size_t l = 0; l < max_levels; ++l) {
    csv << ",regions_l" << l;
  }
  csv << "\n";
  for (const Row &r : rows) {
    const double work = static_cast<double>(r.es.relaxations + r.es.key_updates) /
                        static_cast<double>(r.n);
    csv << r.n << "," << r.m << "," << r.es.relaxations << "," << r.es.key_updates << ","
        << format_real(work) << "," << r.dc.comparisons << "," << format_real(r.es.wall_ms) << ","
        << r.sep_max;
    for (std::size_t l = 0; l < max_levels; ++l) {
      csv << "," << (l < r.regions.size() ? r.regions[l] : 0);
    }
    csv << "\n";
  }
  emit(o.output, csv.str());
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Recursive divisions of geometric graphs and division-driven shortest paths"};
  app.require_subcommand(1);
  Options o;
  o.argv.assign(argv + 1, argv + argc);

  auto *spanner = app.add_subcommand("gen-spanner", "greedy t-spanner of random points");
  spanner->add_option("--n", o.n, "number of points")->required();
  spanner->add_option("--d", o.d, "dimension");
  spanner->add_option("--t", o.t, "stretch factor (> 1)");
  spanner->add_option("--dist", o.distribution, "uniform or clustered");
  spanner->add_option("--seed", o.seed, "random seed");
  spanner->add_option("-o,--output", o.output, "geograph output (stdout if omitted)");

  auto *kply = app.add_subcommand("gen-kply", "ball system of ply at most k");
  kply->add_option("--n", o.n)->required();
  kply->add_option("--d", o.d);
  kply->add_option("--k", o.k, "ply bound");
  kply->add_option("--seed", o.seed);
  kply->add_option("-o,--output", o.output);

  auto *cubes = app.add_subcommand("gen-cubes", "cube system of thickness at most kappa");
  cubes->add_option("--n", o.n)->required();
  cubes->add_option("--d", o.d);
  cubes->add_option("--kappa", o.kappa, "thickness bound");
  cubes->add_option("--seed", o.seed);
  cubes->add_option("-o,--output", o.output);

  auto *igraph = app.add_subcommand("igraph", "intersection graph of a system");
  igraph->add_option("-i,--input", o.input, "geosys input")->required();
  igraph->add_option("-o,--output", o.output);

  auto *separate = app.add_subcommand("separate", "one separator with its report");
  separate->add_option("--method", o.method, "lanky (graph input), mttv or sw (system input)");
  separate->add_option("-i,--input", o.input)->required();
  separate->add_option("--seed", o.seed);
  separate->add_option("--tau", o.tau);
  separate->add_option("--eta", o.eta);
  separate->add_option("--delta", o.delta);
  separate->add_option("--eps", o.eps);
  separate->add_option("-o,--output", o.output);

  auto add_division_options = [&](CLI::App *c) {
    c->add_option("--class", o.cls, "lanky, kply or cubes");
    c->add_option("--graph", o.graph, "geograph input");
    c->add_option("--sys", o.sys, "geosys input (required for kply and cubes)");
    c->add_option("--seed", o.seed);
    c->add_option("--tau", o.tau);
    c->add_option("--eta", o.eta);
    c->add_option("--delta", o.delta);
    c->add_option("--eps", o.eps);
  };
  auto *rdiv = app.add_subcommand("rdiv", "recursive division tree as JSON");
  add_division_options(rdiv);
  rdiv->add_option("-o,--output", o.output);
  rdiv->add_option("--report", o.report, "validation report JSON");

  auto *ss = app.add_subcommand("sssp", "single-source shortest paths");
  add_division_options(ss);
  ss->add_option("--engine", o.engine, "hkrs or dijkstra");
  ss->add_option("--source", o.source);
  ss->add_option("--budget", o.budget, "fixed budget for every internal node");
  ss->add_option("-o,--output", o.output, "label file");
  ss->add_option("--stats", o.stats, "stats JSON");

  auto *verify = app.add_subcommand("verify", "compare two label files");
  verify->add_option("left", o.left)->required();
  verify->add_option("right", o.right)->required();
  verify->add_option("--tol", o.tol, "relative tolerance");

  auto *bench = app.add_subcommand("bench", "doubling-n sweep, CSV of counters");
  bench->add_option("--sweep", o.sweep, "exponent range lo:hi");
  bench->add_option("--class", o.cls);
  bench->add_option("--d", o.d);
  bench->add_option("--t", o.t);
  bench->add_option("--k", o.k);
  bench->add_option("--kappa", o.kappa);
  bench->add_option("--dist", o.distribution);
  bench->add_option("--seed", o.seed);
  bench->add_option("--tau", o.tau);
  bench->add_option("--eta", o.eta);
  bench->add_option("--delta", o.delta);
  bench->add_option("--eps", o.eps);
  bench->add_option("-o,--output", o.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*spanner) {
      const auto pts = gen_points(o.n, o.d, parse_distribution(o.distribution), o.seed);
      emit(o.output, graph_text(greedy_spanner(pts, o.t), provenance(o)));
    } else if (*kply) {
      emit(o.output, system_text(gen_kply(o.n, o.d, o.k, o.seed), provenance(o)));
    } else if (*cubes) {
      emit(o.output, system_text(gen_cubes(o.n, o.d, o.kappa, o.seed), provenance(o)));
    } else if (*igraph) {
      emit(o.output, graph_text(intersection_graph(load_system(o.input)), provenance(o)));
    } else if (*separate) {
      return cmd_separate(o);
    } else if (*rdiv) {
      return cmd_rdiv(o);
    } else if (*ss) {
      return cmd_sssp(o);
    } else if (*verify) {
      return cmd_verify(o);
    } else if (*bench) {
      return cmd_bench(o);
    }
  } catch (const ContractError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

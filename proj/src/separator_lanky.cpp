/*******************************************************************************
 * @file:   separator_lanky.cpp
 ******************************************************************************/
#include <algorithm>
#include <cmath>
#include <string>

#include "geosssp/error.hpp"
#include "geosssp/rng.hpp"
#include "geosssp/separators.hpp"

namespace geosssp {

double default_eta(std::size_t d) {
  switch (d) {
  case 2:
    return 7.0;
  case 3:
    return 13.0;
  case 4:
    return 25.0;
  default:
    return std::pow(3.0, static_cast<double>(d));
  }
}

LankyParams default_lanky_params(std::size_t d) {
  LankyParams p;
  p.d = d;
  p.eta = default_eta(d);
  return p;
}

double lanky_balance_bound(const LankyParams &params) {
  return 1.0 - 1.0 / (params.eta * std::pow(2.0, static_cast<double>(params.d + 1)));
}

SeparatorCut lanky_separator(const EuclideanGraph &g, const LankyParams &params, std::uint64_t seed) {
  const std::size_t n = g.n();
  if (n == 0) {
    throw ContractError("separators", "lanky_separator needs a nonempty graph");
  }
  if (params.tau == 0 || !(params.eta > 0.0)) {
    throw ContractError("separators", "lanky parameters need tau >= 1 and eta > 0");
  }
  const double d = static_cast<double>(params.d);
  const auto k = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) / (params.eta * std::pow(2.0, d + 1.0)))
  );
  const double max_cut = params.c_rej * params.tau * params.eta * std::pow(8.0, d) *
                         std::pow(static_cast<double>(n), 1.0 - 1.0 / d);

  Rng rng(seed);
  SeparatorCut cut;
  std::vector<double> dist(n);
  std::vector<double> sorted(n);
  std::vector<bool> inside(n);
  std::vector<bool> in_s(n);

  if (n == 1) {
    cut.surface = make_ball(Point(g.point(0)), 0.0);
    cut.A = {0};
    cut.attempts = 1;
    return cut;
  }

  for (int outer = 0; outer < kOuterRestarts; ++outer) {
    const auto v = static_cast<VertexId>(rng.below(n));
    for (VertexId u = 0; u < n; ++u) {
      dist[u] = distance(g.point(v), g.point(u));
    }
    sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    // Radius whose doubled open ball holds at most n/2 vertices.
    const double r = 0.5 * sorted[n / 2];
    const auto covered = static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), r) - sorted.begin()
    );
    if (!(r > 0.0) || covered < k) {
      ++cut.attempts;
      continue;
    }
    for (int inner = 0; inner < kInnerDraws; ++inner) {
      ++cut.attempts;
      const double r_star = (1.0 + rng.uniform_open_closed()) * r;
      for (VertexId u = 0; u < n; ++u) {
        inside[u] = dist[u] < r_star;
      }
      std::vector<std::uint32_t> cut_edges;
      for (EdgeId e = 0; e < g.m(); ++e) {
        if (inside[g.edge(e).u] != inside[g.edge(e).v]) {
          cut_edges.push_back(e);
        }
      }
      if (static_cast<double>(cut_edges.size()) > max_cut) {
        continue;
      }
      std::fill(in_s.begin(), in_s.end(), false);
      for (const EdgeId e : cut_edges) {
        in_s[g.edge(e).u] = true;
        in_s[g.edge(e).v] = true;
      }
      cut.S.clear();
      cut.A.clear();
      cut.B.clear();
      for (VertexId u = 0; u < n; ++u) {
        if (in_s[u]) {
          cut.S.push_back(u);
        } else if (inside[u]) {
          cut.A.push_back(u);
        } else {
          cut.B.push_back(u);
        }
      }
      cut.surface = make_ball(Point(g.point(v)), r_star);
      cut.cut_object_ids = std::move(cut_edges);
      return cut;
    }
  }
  throw ContractError(
      "separators", "lanky_separator: no qualifying center after " +
                        std::to_string(cut.attempts) + " attempts (n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ")"
  );
}

SeparatorReport validate_separator(const EuclideanGraph &g, const SeparatorCut &cut, double rho) {
  const std::size_t n = g.n();
  std::vector<std::uint8_t> side(n, 0);
  auto mark = [&](const std::vector<VertexId> &ids, std::uint8_t tag) {
    for (const VertexId v : ids) {
      if (v >= n) {
        throw ContractError("separators", "cut vertex id " + std::to_string(v) + " out of range");
      }
      if (side[v] != 0) {
        throw ContractError("separators", "vertex " + std::to_string(v) + " appears twice in cut");
      }
      side[v] = tag;
    }
  };
  mark(cut.S, 1);
  mark(cut.A, 2);
  mark(cut.B, 3);
  if (cut.S.size() + cut.A.size() + cut.B.size() != n) {
    throw ContractError("separators", "S, A, B do not cover every vertex");
  }
  SeparatorReport report;
  report.sep_size = cut.S.size();
  report.a_size = cut.A.size();
  report.b_size = cut.B.size();
  report.cut_count = cut.cut_object_ids.size();
  report.balance =
      n == 0 ? 0.0
             : static_cast<double>(std::max(cut.A.size(), cut.B.size())) / static_cast<double>(n);
  report.valid = true;
  for (const Edge &e : g.edges()) {
    if (side[e.u] + side[e.v] == 5) {
      report.valid = false;
      report.reason = "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " joins A and B";
      return report;
    }
  }
  if (report.balance > rho) {
    report.valid = false;
    report.reason = "balance " + std::to_string(report.balance) + " exceeds " + std::to_string(rho);
  }
  return report;
}

} // namespace geosssp

/*******************************************************************************
 * @file:   serialize.cpp
 ******************************************************************************/
#include "geosssp/serialize.hpp"

#include <cmath>
#include <variant>

namespace geosssp {

namespace {

Json finite_or_null(double x) {
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json region_json(const DivisionTree &tree, std::uint32_t idx) {
  const Region &r = tree.regions[idx];
  Json j;
  j["id"] = idx;
  j["level"] = r.level;
  j["flagged"] = r.flagged;
  j["vertices"] = r.vertices;
  j["boundary"] = r.boundary;
  j["members"] = r.members;
  j["member_boundary"] = r.member_boundary;
  Json children = Json::array();
  for (const std::uint32_t c : r.children) {
    children.push_back(region_json(tree, c));
  }
  j["children"] = std::move(children);
  return j;
}

} // namespace

Json to_json(const Surface &surface) {
  return std::visit(
      [](const auto &s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json j;
        if constexpr (std::is_same_v<T, Ball>) {
          j["kind"] = "ball";
          j["center"] = s.center.coords();
          j["radius"] = s.radius;
        } else if constexpr (std::is_same_v<T, Sphere>) {
          j["kind"] = "sphere";
          j["center"] = s.center.coords();
          j["radius"] = s.radius;
        } else {
          j["kind"] = "rect";
          j["lo"] = s.lo.coords();
          j["hi"] = s.hi.coords();
        }
        return j;
      },
      surface
  );
}

Json to_json(const SeparatorCut &cut) {
  Json j;
  j["surface"] = to_json(cut.surface);
  j["S"] = cut.S;
  j["A"] = cut.A;
  j["B"] = cut.B;
  j["cut_ids"] = cut.cut_object_ids;
  j["attempts"] = cut.attempts;
  return j;
}

Json to_json(const SeparatorReport &report) {
  Json j;
  j["valid"] = report.valid;
  j["sep_size"] = report.sep_size;
  j["a_size"] = report.a_size;
  j["b_size"] = report.b_size;
  j["balance"] = report.balance;
  j["cut_count"] = report.cut_count;
  j["reason"] = report.reason;
  return j;
}

Json to_json(const ContractedCut &cut) {
  Json j;
  j["S"] = cut.S;
  j["A"] = cut.A;
  j["B"] = cut.B;
  j["retries"] = cut.retries;
  j["class_cut"] = to_json(cut.class_cut);
  return j;
}

Json to_json(const Schedule &s) {
  Json j;
  j["d"] = s.d;
  j["I"] = s.I;
  j["proxy"] = s.proxy;
  j["c_prime"] = s.c_prime;
  j["z"] = s.z;
  j["beta"] = s.beta;
  j["r"] = s.r;
  j["f_of_r"] = s.f_of_r;
  return j;
}

Json to_json(const Contraction &c) {
  Json j;
  j["schedule"] = to_json(c.schedule);
  Json levels = Json::array();
  for (const auto &lvl : c.levels) {
    Json l;
    l["level"] = lvl.level;
    l["n"] = lvl.graph.n();
    l["m"] = lvl.graph.m();
    l["z"] = lvl.z_used;
    l["cset"] = lvl.cset;
    l["rep_of"] = lvl.rep_of;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j;
}

Json to_json(const DivisionTree &tree) {
  Json j;
  j["class"] = class_name(tree.cls);
  j["n"] = tree.work.n();
  j["m"] = tree.work.m();
  j["transformed"] = tree.transformed;
  j["schedule"] = to_json(tree.schedule);
  j["level_sizes"] = tree.level_sizes;
  Json stats = Json::array();
  for (const LevelStats &s : tree.stats) {
    Json l;
    l["level"] = s.level;
    l["n_i"] = s.n_i;
    l["regions"] = s.regions;
    l["sum_sizes"] = s.sum_sizes;
    l["max_size"] = s.max_size;
    l["max_boundary"] = s.max_boundary;
    l["sum_member_sizes"] = s.sum_member_sizes;
    l["max_member_size"] = s.max_member_size;
    l["max_member_boundary"] = s.max_member_boundary;
    l["flagged"] = s.flagged;
    stats.push_back(std::move(l));
  }
  j["levels"] = std::move(stats);
  j["separator_calls"] = tree.log.calls.size();
  j["separator_retries"] = tree.log.retries;
  j["stalled_pieces"] = tree.log.stalled;
  j["fallback_cuts"] = tree.log.fallbacks;
  j["root"] = tree.regions.empty() ? Json(nullptr) : region_json(tree, 0);
  return j;
}

Json to_json(const DivisionReport &report) {
  Json j;
  j["valid"] = report.valid;
  j["edges_covered"] = report.edges_covered;
  j["boundary_consistent"] = report.boundary_consistent;
  j["children_cover"] = report.children_cover;
  j["threshold_found"] = report.threshold_found;
  j["threshold_level"] = report.threshold_level;
  j["threshold_log10_r"] = report.threshold_log10_r;
  Json levels = Json::array();
  for (const LevelCheck &c : report.levels) {
    Json l;
    l["level"] = c.level;
    l["regions"] = c.regions;
    l["region_bound"] = c.region_bound;
    l["sum_sizes"] = c.sum_sizes;
    l["sum_bound"] = c.sum_bound;
    l["max_member_size"] = c.max_member_size;
    l["size_bound"] = finite_or_null(c.size_bound);
    l["max_member_boundary"] = c.max_member_boundary;
    l["boundary_bound"] = finite_or_null(c.boundary_bound);
    l["margin"] = finite_or_null(c.margin);
    l["margin_applies"] = c.margin_applies;
    l["ok"] = c.ok;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["problems"] = report.problems;
  return j;
}

Json to_json(const EngineStats &stats, bool with_time) {
  Json j;
  j["n"] = stats.n;
  j["m"] = stats.m;
  j["levels"] = stats.levels;
  j["relaxations"] = stats.relaxations;
  j["key_updates"] = stats.key_updates;
  j["activations_per_level"] = stats.activations_per_level;
  if (with_time) {
    j["wall_ms"] = stats.wall_ms;
  }
  return j;
}

std::string dump(const Json &j) {
  return j.dump(2) + "\n";
}

} // namespace geosssp

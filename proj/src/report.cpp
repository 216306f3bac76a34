#include "reebforest/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

namespace reebforest {

double round12(double value) {
  if (!std::isfinite(value)) return value;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  const double rounded = std::strtod(buffer, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;  // no negative zero in output
}

ApproximationReport make_report(const GraphApproximation& run, std::size_t original_vertices,
                                double tolerance) {
  std::vector<Index> points(original_vertices);
  std::iota(points.begin(), points.end(), Index{0});
  return make_report(run, points, tolerance);
}

ApproximationReport make_report(const GraphApproximation& run, const std::vector<Index>& points,
                                double tolerance) {
  ApproximationReport r;
  const auto& g = run.regularized.graph;
  r.base = g.base() ? g.label(*g.base()) : std::string{};
  r.points = points.size();
  r.regularized_vertices = g.vertex_count();
  if (!points.empty()) r.worst_x = r.worst_y = g.label(points.front());
  r.hyp = run.hyp;
  r.hyp_p = run.hyp_p.value;
  r.hyp_f = run.poset_result.hyp.value;
  r.max_fence = run.poset_result.max_fence.value;
  r.max_fence_mode = run.poset_result.max_fence.mode;
  r.max_fence_fallback = run.poset_result.fence_fallback;
  r.betti = run.betti;
  r.two_beta_plus_two = 2 * run.betti + 2;
  r.bound_main = run.bound_main;
  r.bound_graph = run.bound_graph;
  r.bound_graph_p = run.bound_graph_p;
  r.trace = run.regularized.trace;

  DistanceMatrix restricted(r.points, 0.0);
  for (Index i = 0; i < r.points; ++i)
    for (Index j = 0; j < r.points; ++j) {
      const Index x = points[i], y = points[j];
      restricted(i, j) = run.tree_distances(x, y);
      if (i >= j) continue;
      if (run.tree_distances(x, y) <= tolerance) ++r.collapsed_pairs;
      const double gap = std::abs(run.distances(x, y) - run.tree_distances(x, y));
      if (gap > r.distortion) {
        r.distortion = gap;
        r.worst_x = g.label(x);
        r.worst_y = g.label(y);
      }
    }
  r.four_point_defect = hyp_four_point(restricted);

  const auto& pr = run.poset_result;
  r.checks["main"] = r.distortion <= r.bound_main + tolerance;
  r.checks["graph"] = r.distortion <= r.bound_graph + tolerance;
  r.checks["graph_p"] = r.distortion <= r.bound_graph_p + tolerance;
  r.checks["identity"] = pr.identity_residual <= tolerance && pr.meet_residual <= tolerance;
  r.checks["lipschitz"] = pr.min_merge_minus_product >= -tolerance;
  r.checks["fence_genus"] = static_cast<long>(r.max_fence) <= r.two_beta_plus_two;
  r.checks["hyp_vertex"] = std::abs(r.hyp_f - r.hyp_p) <= tolerance;
  r.checks["four_point"] = r.four_point_defect <= tolerance;
  r.checks["pipeline"] = run.ok;
  r.ok = true;
  for (const auto& [name, passed] : r.checks) r.ok = r.ok && passed;
  return r;
}

nlohmann::json to_json(const ApproximationReport& r) {
  using nlohmann::json;
  json j;
  j["distortion"] = round12(r.distortion);
  j["worst_pair"] = {r.worst_x, r.worst_y};
  j["base"] = r.base;
  j["points"] = r.points;
  j["regularized_vertices"] = r.regularized_vertices;
  j["hyp"] = round12(r.hyp);
  j["hyp_p"] = round12(r.hyp_p);
  j["hyp_f"] = round12(r.hyp_f);
  j["hyp_is_finite_proxy"] = true;
  j["MF"] = r.max_fence;
  j["MF_mode"] = to_string(r.max_fence_mode);
  j["MF_fallback"] = r.max_fence_fallback;
  j["betti"] = r.betti;
  j["two_beta_plus_two"] = r.two_beta_plus_two;
  j["bound"] = round12(r.bound_main);
  j["bound_main"] = round12(r.bound_main);
  j["bound_graph"] = round12(r.bound_graph);
  j["bound_graph_p"] = round12(r.bound_graph_p);
  auto optional_number = [](const std::optional<double>& v) {
    return v ? json(round12(*v)) : json(nullptr);
  };
  j["upsilon"] = optional_number(r.upsilon);
  j["phi_of_G"] = optional_number(r.phi_of_G);
  j["phi_complete_graph"] = optional_number(r.phi_complete_graph);
  j["Phi_upper_bound"] = optional_number(r.phi_upper_bound);
  j["collapsed_pairs"] = r.collapsed_pairs;
  j["four_point_defect"] = round12(r.four_point_defect);
  j["checks"] = r.checks;
  j["ok"] = r.ok;
  j["log_base"] = 2;
  json added = json::array();
  for (const auto& a : r.trace.added)
    added.push_back({{"host", {a.host_u, a.host_v}},
                     {"offset", round12(a.offset)},
                     {"reason", to_string(a.reason)}});
  j["regularization"] = {{"added_vertices", added}};
  return j;
}

nlohmann::json to_json(const PosetApproximation& result) {
  return {{"distortion", round12(result.distortion)},
          {"hyp_f", round12(result.hyp.value)},
          {"MF", result.max_fence.value},
          {"MF_mode", to_string(result.max_fence.mode)},
          {"MF_fallback", result.fence_fallback},
          {"bound", round12(result.bound)},
          {"log_base", 2},
          {"ok", result.ok}};
}

}  // namespace reebforest

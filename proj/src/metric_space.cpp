#include "reebforest/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace reebforest {

MetricGraph complete_graph_embedding(const FiniteMetricSpace& space) {
  std::vector<Edge> edges;
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = x + 1; y < space.size(); ++y) edges.push_back({x, y, space(x, y)});
  return MetricGraph(space.labels(), std::move(edges));
}

double gromov_bound_upsilon(const FiniteMetricSpace& space) {
  const double hyp = hyp_four_point(space.distances());
  if (hyp <= 0.0) return 0.0;
  return 2.0 * hyp * std::log2(2.0 * static_cast<double>(space.size()));
}

PhiValue phi_of_embedding(const MetricGraph& g, Index base) {
  const auto regularized = regularize(g, base);
  PhiValue out;
  out.hyp_proxy = hyp_four_point(shortest_paths(regularized.graph));
  out.betti = regularized.graph.betti();
  out.proxy_vertices = regularized.graph.vertex_count();
  out.phi = graph_bound(out.betti, out.hyp_proxy);
  return out;
}

PhiValue phi_of_embedding(const MetricGraph& g) { return phi_of_embedding(g, g.base().value_or(0)); }

void verify_isometric(const FiniteMetricSpace& space, const MetricGraph& g, double tolerance) {
  std::vector<Index> at(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    auto v = g.find(space.label(x));
    if (!v) throw InvariantError("embedding is missing point '" + space.label(x) + "'");
    at[x] = *v;
  }
  const auto d = shortest_paths(g);
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = x + 1; y < space.size(); ++y)
      if (std::abs(d(at[x], at[y]) - space(x, y)) > tolerance)
        throw InvariantError("embedding is not isometric: graph distance between " + space.label(x) +
                             " and " + space.label(y) + " differs from the metric");
}

MetricApproximation tree_approx_metric_space(const FiniteMetricSpace& space,
                                             const std::optional<MetricGraph>& embedding,
                                             const std::optional<std::string>& base,
                                             const MetricApproximationOptions& options) {
  const double tol = options.tolerance;
  MetricGraph graph = embedding ? *embedding : complete_graph_embedding(space);
  if (embedding) verify_isometric(space, graph, tol);

  std::vector<Index> at(space.size());
  for (Index x = 0; x < space.size(); ++x) at[x] = graph.index_of(space.label(x));

  std::vector<Index> candidates;
  if (base) {
    candidates.push_back(graph.index_of(*base));
  } else {
    candidates = at;
    std::sort(candidates.begin(), candidates.end(),
              [&](Index a, Index b) { return graph.label(a) < graph.label(b); });
  }

  const GraphApproximationOptions run_options{options.mode, options.search, tol};
  std::optional<GraphApproximation> best;
  std::vector<BaseSweepRow> sweep;
  for (Index candidate : candidates) {
    auto run = tree_approx_graph(graph, candidate, run_options);
    double distortion = 0.0;
    for (Index x = 0; x < space.size(); ++x)
      for (Index y = x + 1; y < space.size(); ++y)
        distortion = std::max(distortion, std::abs(space(x, y) - run.tree_distances(at[x], at[y])));
    const bool ok = run.ok && distortion <= run.bound_graph + tol && distortion <= run.bound_main + tol;
    sweep.push_back({graph.label(candidate), distortion, run.bound_main, run.bound_graph, ok});
    if (!best || run.bound_graph < best->bound_graph) best = std::move(run);
  }

  MetricApproximation out{DistanceMatrix(space.size(), 0.0), make_report(*best, at, tol),
                          std::move(sweep), std::move(*best), std::move(graph)};
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = 0; y < space.size(); ++y)
      out.tree_metric(x, y) = out.run.tree_distances(at[x], at[y]);

  auto& report = out.report;
  report.upsilon = gromov_bound_upsilon(space);
  report.phi_of_G = out.run.bound_graph;
  if (embedding) {
    const Index base_point = [&] {
      for (Index x = 0; x < space.size(); ++x)
        if (space.label(x) == report.base) return x;
      return Index{0};
    }();
    report.phi_complete_graph = phi_of_embedding(complete_graph_embedding(space), base_point).phi;
  } else {
    report.phi_complete_graph = report.phi_of_G;
  }
  report.phi_upper_bound = std::min(*report.phi_of_G, *report.phi_complete_graph);
  bool sweep_ok = true;
  for (const auto& row : out.sweep) sweep_ok = sweep_ok && row.ok;
  report.checks["base_sweep"] = sweep_ok;
  report.ok = report.ok && sweep_ok;
  return out;
}

}  // namespace reebforest

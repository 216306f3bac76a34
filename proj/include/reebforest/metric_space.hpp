#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reebforest/graph.hpp"
#include "reebforest/metric.hpp"
#include "reebforest/report.hpp"

namespace reebforest {

/// Complete graph on the points with edge lengths d(x, y).
MetricGraph complete_graph_embedding(const FiniteMetricSpace& space);

/// Gromov's bound 2 hyp(X) log2(2 |X|).
double gromov_bound_upsilon(const FiniteMetricSpace& space);

struct PhiValue {
  double phi = 0.0;
  double hyp_proxy = 0.0;  ///< hyp on the vertex set of the regularized graph
  long betti = 0;
  std::size_t proxy_vertices = 0;
};

/// 2 hyp log2(4 beta + 4) for a graph, with hyp evaluated on the vertices of
/// the graph regularized at `base` (a finite stand-in for the continuum).
PhiValue phi_of_embedding(const MetricGraph& g, Index base);
PhiValue phi_of_embedding(const MetricGraph& g);  ///< base: g.base() or vertex 0

struct BaseSweepRow {
  std::string base;
  double distortion = 0.0;
  double bound_main = 0.0;
  double bound_graph = 0.0;
  bool ok = false;
};

struct MetricApproximation {
  DistanceMatrix tree_metric;   ///< t_X on the points of X (a pseudo-metric)
  ApproximationReport report;
  std::vector<BaseSweepRow> sweep;
  GraphApproximation run;       ///< pipeline at the selected base
  MetricGraph embedding;        ///< the graph the pipeline ran on
};

struct MetricApproximationOptions {
  FenceMode mode = FenceMode::exact;
  FenceSearchOptions search;
  double tolerance = kDefaultTolerance;
};

/// Throws InvariantError naming the first pair where the graph distance
/// differs from d_X, or a point missing from the graph.
void verify_isometric(const FiniteMetricSpace& space, const MetricGraph& g,
                      double tolerance = kDefaultTolerance);

/// Tree pseudo-metric on X through a graph embedding (the complete graph by
/// default). Without an explicit base every point is tried and the one with
/// the smallest graph bound wins, ties going to the smaller label.
MetricApproximation tree_approx_metric_space(const FiniteMetricSpace& space,
                                             const std::optional<MetricGraph>& embedding = std::nullopt,
                                             const std::optional<std::string>& base = std::nullopt,
                                             const MetricApproximationOptions& options = {});

}  // namespace reebforest

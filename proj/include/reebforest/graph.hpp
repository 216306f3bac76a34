#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reebforest/common.hpp"
#include "reebforest/metric.hpp"
#include "reebforest/reeb.hpp"

namespace reebforest {

struct Edge {
  Index u = 0;
  Index v = 0;
  double length = 0.0;
};

/// Finite, simple, connected graph with positive edge lengths.
class MetricGraph {
 public:
  MetricGraph(std::vector<std::string> labels, std::vector<Edge> edges,
              std::optional<Index> base = std::nullopt);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Index v) const { return labels_[v]; }
  std::optional<Index> base() const noexcept { return base_; }
  std::optional<Index> find(const std::string& label) const;
  Index index_of(const std::string& label) const;

  /// Incident edge indices of v.
  const std::vector<Index>& incident(Index v) const { return incident_[v]; }
  Index other_end(Index edge, Index v) const {
    return edges_[edge].u == v ? edges_[edge].v : edges_[edge].u;
  }

  /// 1 - V + E.
  long betti() const {
    return 1 - static_cast<long>(vertex_count()) + static_cast<long>(edge_count());
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::optional<Index> base_;
  std::vector<std::vector<Index>> incident_;
};

/// All-pairs shortest-path distances d_l.
DistanceMatrix shortest_paths(const MetricGraph& g);

/// Single-source distances; `skip_edge` removes one edge from consideration.
std::vector<double> distances_from(const MetricGraph& g, Index source,
                                   std::optional<Index> skip_edge = std::nullopt);

enum class SubdivisionReason { apex, midpoint };

struct AddedVertex {
  std::string host_u, host_v;   ///< endpoints of the subdivided edge
  double offset = 0.0;          ///< distance from host_u
  SubdivisionReason reason = SubdivisionReason::apex;
  Index vertex = 0;             ///< index in the regularized graph
};

struct RegularizationTrace {
  std::vector<AddedVertex> added;
  std::vector<Index> original_to_new;  ///< identity prefix: originals keep their indices
};

struct RegularizedGraph {
  MetricGraph graph;  ///< base set to the regularization base
  RegularizationTrace trace;
};

struct RegularizeOptions {
  double tolerance = kDefaultTolerance;
};

/// Subdivides edges so that every edge satisfies l = d_l = |d(p,v) - d(p,w)|
/// (one apex per edge at most) and is the unique geodesic between its
/// endpoints (one midpoint per edge at most).
RegularizedGraph regularize(const MetricGraph& g, Index base, const RegularizeOptions& options = {});

/// Empty when g is p-regular, else a description of the violated clause.
std::optional<std::string> p_regularity_violation(const MetricGraph& g, Index base,
                                                  double tolerance = kDefaultTolerance);

/// The Reeb poset (V, <=_p, d(p, .)) of a p-regular graph.
ReebPoset induce_poset(const MetricGraph& g, Index base, double tolerance = kDefaultTolerance);

/// Everything produced by the graph pipeline.
struct GraphApproximation {
  RegularizedGraph regularized;
  DistanceMatrix distances;        ///< d_l on the regularized vertex set
  ReebPoset poset;
  TreeQuotient tree;
  DistanceMatrix tree_distances;   ///< t pulled back to regularized vertices
  PosetApproximation poset_result;
  double hyp = 0.0;                ///< hyp of the regularized vertex set
  Hyperbolicity hyp_p;             ///< hyp at the base
  double distortion = 0.0;         ///< over original vertices only
  Index worst_x = 0, worst_y = 0;
  long betti = 0;
  double bound_main = 0.0;         ///< 2 log2(2 M_F) hyp_p
  double bound_graph = 0.0;        ///< 2 log2(4 beta + 4) hyp
  double bound_graph_p = 0.0;      ///< 2 log2(4 beta + 4) hyp_p
  bool ok = false;
};

struct GraphApproximationOptions {
  FenceMode mode = FenceMode::exact;
  FenceSearchOptions search;
  double tolerance = kDefaultTolerance;
};

/// 2 log2(4 beta + 4) hyp, 0 when hyp is 0.
double graph_bound(long betti, double hyp);

/// regularize -> induce_poset -> reeb_tree -> tree metric, with all bounds.
GraphApproximation tree_approx_graph(const MetricGraph& g, Index base,
                                     const GraphApproximationOptions& options = {});

/// Base from the graph if it names one; otherwise every vertex is tried and
/// the smallest graph bound wins, ties going to the smaller label.
GraphApproximation tree_approx_graph(const MetricGraph& g, const GraphApproximationOptions& options = {});

const char* to_string(SubdivisionReason reason);

}  // namespace reebforest

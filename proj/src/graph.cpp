#include "reebforest/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "reebforest/union_find.hpp"

namespace reebforest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string unique_label(const std::set<std::string>& taken, const std::string& stem) {
  if (!taken.count(stem)) return stem;
  for (std::size_t k = 2;; ++k) {
    auto candidate = stem + "#" + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace

MetricGraph::MetricGraph(std::vector<std::string> labels, std::vector<Edge> edges,
                         std::optional<Index> base)
    : labels_(std::move(labels)), edges_(std::move(edges)), base_(base), incident_(labels_.size()) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InvariantError("graph must have at least one vertex");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != n) throw InvariantError("duplicate vertex label");
  if (base_ && *base_ >= n) throw InvariantError("base vertex out of range");

  std::set<std::pair<Index, Index>> pairs;
  UnionFind components(n);
  std::size_t merges = 0;
  for (Index e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.u >= n || edge.v >= n) throw InvariantError("edge references a vertex out of range");
    if (edge.u == edge.v) throw InvariantError("loop at vertex " + labels_[edge.u]);
    if (!(edge.length > 0.0) || !std::isfinite(edge.length))
      throw InvariantError("edge " + labels_[edge.u] + "-" + labels_[edge.v] +
                           " must have positive finite length");
    if (!pairs.emplace(std::min(edge.u, edge.v), std::max(edge.u, edge.v)).second)
      throw InvariantError("multiple edges between " + labels_[edge.u] + " and " + labels_[edge.v]);
    incident_[edge.u].push_back(e);
    incident_[edge.v].push_back(e);
    if (components.unite(edge.u, edge.v)) ++merges;
  }
  if (merges + 1 != n) throw InvariantError("graph is not connected");
}

std::optional<Index> MetricGraph::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

Index MetricGraph::index_of(const std::string& label) const {
  if (auto v = find(label)) return *v;
  throw InvariantError("unknown vertex '" + label + "'");
}

DistanceMatrix shortest_paths(const MetricGraph& g) {
  const std::size_t n = g.vertex_count();
  DistanceMatrix d(n, kInf);
  for (Index v = 0; v < n; ++v) d(v, v) = 0.0;
  for (const auto& e : g.edges()) {
    d(e.u, e.v) = std::min(d(e.u, e.v), e.length);
    d(e.v, e.u) = d(e.u, e.v);
  }
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i) {
      const double dik = d(i, k);
      if (dik == kInf) continue;
      for (Index j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), dik + d(k, j));
    }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (d(i, j) == kInf) throw InvariantError("graph is not connected");
  return d;
}

std::vector<double> distances_from(const MetricGraph& g, Index source, std::optional<Index> skip_edge) {
  std::vector<double> dist(g.vertex_count(), kInf);
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (Index e : g.incident(v)) {
      if (skip_edge && e == *skip_edge) continue;
      const Index w = g.other_end(e, v);
      const double nd = d + g.edges()[e].length;
      if (nd < dist[w]) {
        dist[w] = nd;
        queue.emplace(nd, w);
      }
    }
  }
  return dist;
}

const char* to_string(SubdivisionReason reason) {
  return reason == SubdivisionReason::apex ? "apex" : "midpoint";
}

RegularizedGraph regularize(const MetricGraph& g, Index base, const RegularizeOptions& options) {
  if (base >= g.vertex_count()) throw InvariantError("base is not a vertex of the graph");
  const double tol = options.tolerance;
  RegularizationTrace trace;
  for (Index v = 0; v < g.vertex_count(); ++v) trace.original_to_new.push_back(v);

  std::vector<std::string> labels = g.labels();
  std::set<std::string> taken(labels.begin(), labels.end());
  auto add_vertex = [&](const std::string& stem) {
    labels.push_back(unique_label(taken, stem));
    taken.insert(labels.back());
    return static_cast<Index>(labels.size() - 1);
  };

  // Apex pass: the farthest point from the base on each edge becomes a vertex.
  const auto from_base = distances_from(g, base);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    const double s = (e.length + from_base[e.v] - from_base[e.u]) / 2.0;
    if (s > tol && s < e.length - tol) {
      const Index a = add_vertex("apex(" + g.label(e.u) + "," + g.label(e.v) + ")");
      trace.added.push_back({g.label(e.u), g.label(e.v), s, SubdivisionReason::apex, a});
      edges.push_back({e.u, a, s});
      edges.push_back({a, e.v, e.length - s});
    } else {
      edges.push_back(e);
    }
  }
  const MetricGraph apexed(labels, edges, base);

  // Midpoint pass: edges that are not the unique geodesic get split in half.
  std::vector<Edge> final_edges;
  for (Index ei = 0; ei < apexed.edge_count(); ++ei) {
    const auto& e = apexed.edges()[ei];
    const double detour = distances_from(apexed, e.u, ei)[e.v];
    if (detour > e.length + tol) {
      final_edges.push_back(e);
      continue;
    }
    const Index m = add_vertex("mid(" + labels[e.u] + "," + labels[e.v] + ")");
    trace.added.push_back({labels[e.u], labels[e.v], e.length / 2.0, SubdivisionReason::midpoint, m});
    final_edges.push_back({e.u, m, e.length / 2.0});
    final_edges.push_back({m, e.v, e.length / 2.0});
  }
  return {MetricGraph(std::move(labels), std::move(final_edges), base), std::move(trace)};
}

std::optional<std::string> p_regularity_violation(const MetricGraph& g, Index base, double tolerance) {
  const auto d = shortest_paths(g);
  for (Index ei = 0; ei < g.edge_count(); ++ei) {
    const auto& e = g.edges()[ei];
    const std::string name = g.label(e.u) + "-" + g.label(e.v);
    if (std::abs(e.length - d(e.u, e.v)) > tolerance)
      return "clause (i): edge " + name + " is longer than the distance between its endpoints";
    if (std::abs(e.length - std::abs(d(base, e.u) - d(base, e.v))) > tolerance)
      return "clause (i): edge " + name + " length differs from the change in distance to the base";
    if (distances_from(g, e.u, ei)[e.v] <= e.length + tolerance)
      return "clause (ii): edge " + name + " is not the unique geodesic between its endpoints";
  }
  return std::nullopt;
}

ReebPoset induce_poset(const MetricGraph& g, Index base, double tolerance) {
  if (base >= g.vertex_count()) throw InvariantError("base is not a vertex of the graph");
  if (auto violation = p_regularity_violation(g, base, tolerance))
    throw InvariantError("graph is not p-regular: " + *violation);
  const auto d = shortest_paths(g);
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> leq(n * n, 0);
  std::vector<double> f(n);
  for (Index x = 0; x < n; ++x) {
    f[x] = d(base, x);
    for (Index y = 0; y < n; ++y)
      leq[x * n + y] = std::abs(d(base, y) - d(base, x) - d(x, y)) <= tolerance;
  }
  ReebPoset rp(Poset::from_relation(n, std::move(leq), g.labels()), std::move(f));

  // The covering graph of the induced order must be the graph itself.
  std::set<std::pair<Index, Index>> edge_set;
  for (const auto& e : g.edges()) edge_set.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  std::set<std::pair<Index, Index>> cover_set;
  for (auto [a, b] : rp.poset().cover_pairs()) cover_set.emplace(std::min(a, b), std::max(a, b));
  if (edge_set != cover_set)
    throw InvariantError("covering graph of the induced poset differs from the graph");
  return rp;
}

double graph_bound(long betti, double hyp) {
  if (hyp <= 0.0) return 0.0;
  return 2.0 * std::log2(4.0 * static_cast<double>(betti) + 4.0) * hyp;
}

GraphApproximation tree_approx_graph(const MetricGraph& g, Index base,
                                     const GraphApproximationOptions& options) {
  const double tol = options.tolerance;
  auto regularized = regularize(g, base, {tol});
  auto distances = shortest_paths(regularized.graph);
  auto poset = induce_poset(regularized.graph, base, tol);
  auto tree = reeb_tree(poset.filtered());
  auto poset_result = approximation_bound(poset, tree, {options.mode, options.search, tol});
  auto tree_distances = pull_back(tree_metric(tree.tree), tree.projection);

  GraphApproximation out{std::move(regularized), std::move(distances), std::move(poset),
                         std::move(tree), std::move(tree_distances), std::move(poset_result), 0.0, {}};
  const std::size_t original = g.vertex_count();
  for (Index x = 0; x < original; ++x)
    for (Index y = x + 1; y < original; ++y) {
      const double gap = std::abs(out.distances(x, y) - out.tree_distances(x, y));
      if (gap > out.distortion) {
        out.distortion = gap;
        out.worst_x = x;
        out.worst_y = y;
      }
    }
  out.hyp_p = hyp_base(out.distances, base);
  out.hyp = hyp_four_point(out.distances);
  out.betti = out.regularized.graph.betti();
  out.bound_main = out.poset_result.bound;
  out.bound_graph = graph_bound(out.betti, out.hyp);
  out.bound_graph_p = graph_bound(out.betti, out.hyp_p.value);

  const bool df_matches =
      max_abs_difference(induced_metric(out.poset.filtered()), out.distances).value <= tol;
  const bool hyp_matches = std::abs(out.hyp_p.value - out.poset_result.hyp.value) <= tol;
  const bool fence_ok = out.poset_result.max_fence.value <= static_cast<std::size_t>(2 * out.betti + 2);
  out.ok = out.poset_result.ok && df_matches && hyp_matches && fence_ok &&
           out.distortion <= out.bound_main + tol && out.distortion <= out.bound_graph_p + tol &&
           out.distortion <= out.bound_graph + tol;
  return out;
}

GraphApproximation tree_approx_graph(const MetricGraph& g, const GraphApproximationOptions& options) {
  if (g.base()) return tree_approx_graph(g, *g.base(), options);
  std::vector<Index> order(g.vertex_count());
  for (Index v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return g.label(a) < g.label(b); });
  std::optional<GraphApproximation> best;
  for (Index v : order) {
    auto run = tree_approx_graph(g, v, options);
    if (!best || run.bound_graph < best->bound_graph) best = std::move(run);
  }
  return std::move(*best);
}

}  // namespace reebforest

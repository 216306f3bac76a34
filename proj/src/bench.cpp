#include "reebforest/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "reebforest/io.hpp"
#include "reebforest/union_find.hpp"

namespace reebforest::bench {

ZnInstance make_zn(std::size_t n, double R, double r) {
  if (n < 1) throw Error("Z_n needs n >= 1");
  if (!(r > 0.0) || !(R >= r) || !std::isfinite(R)) throw Error("Z_n needs R >= r > 0");

  std::vector<std::string> labels{"p"};
  for (std::size_t i = 0; i <= n; ++i) labels.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("y" + std::to_string(i));
  auto x = [](std::size_t i) { return Index{1 + i}; };
  auto y = [n](std::size_t i) { return Index{n + 1 + i}; };

  std::vector<Edge> edges;
  for (std::size_t i = 0; i <= n; ++i) edges.push_back({0, x(i), R});
  for (std::size_t i = 1; i <= n; ++i) {
    edges.push_back({x(i - 1), y(i), r});
    edges.push_back({x(i), y(i), r});
  }

  std::vector<std::string> fence{"x0"};
  for (std::size_t i = 1; i <= n; ++i) {
    fence.push_back("y" + std::to_string(i));
    fence.push_back("x" + std::to_string(i));
  }

  ZnInstance z{n, R, r, MetricGraph(labels, std::move(edges), Index{0}), labels, std::move(fence)};
  if (z.graph.betti() != static_cast<long>(n))
    throw InvariantError("Z_n graph has betti number " + std::to_string(z.graph.betti()));
  const auto check = verify_lower_bound_argument(z, z.graph);
  if (!check.fence_found || check.fence_length != 2 * n)
    throw InvariantError("Z_n fence of length 2n not found under <=_p");
  return z;
}

FiniteMetricSpace zn_metric(const ZnInstance& z) {
  const auto d = shortest_paths(z.graph);
  const std::size_t m = z.sample.size();
  DistanceMatrix out(m, 0.0);
  std::vector<Index> at(m);
  for (Index i = 0; i < m; ++i) at[i] = z.graph.index_of(z.sample[i]);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) out(i, j) = d(at[i], at[j]);
  return FiniteMetricSpace(z.sample, std::move(out));
}

LowerBoundCheck verify_lower_bound_argument(const ZnInstance& z, const MetricGraph& g) {
  verify_isometric(zn_metric(z), g);
  const Index p = g.index_of("p");
  const auto regularized = regularize(g, p);
  const auto poset = induce_poset(regularized.graph, p);
  std::vector<Index> fence;
  for (const auto& label : z.fence_labels) fence.push_back(regularized.graph.index_of(label));

  LowerBoundCheck out;
  out.fence_found = is_fence(poset.poset(), fence);
  out.fence_length = fence.size() - 1;
  out.betti = regularized.graph.betti();
  out.betti_ok = out.betti >= static_cast<long>(z.n) - 1;
  out.ok = out.fence_found && out.fence_length == 2 * z.n && out.betti_ok;
  return out;
}

std::vector<GrowthRow> growth_comparison(std::size_t n_first, std::size_t n_last, double R, double r,
                                         const GrowthOptions& options) {
  std::vector<GrowthRow> rows;
  const double tol = options.tolerance;
  for (std::size_t n = n_first; n <= n_last; ++n) {
    const auto z = make_zn(n, R, r);
    const auto space = zn_metric(z);
    GrowthRow row;
    row.n = n;
    row.hyp = hyp_four_point(space.distances());
    row.upsilon = gromov_bound_upsilon(space);
    row.phi = phi_of_embedding(z.graph, 0).phi;
    if (n <= options.complete_graph_max_n)
      row.phi_complete = phi_of_embedding(complete_graph_embedding(space), 0).phi;
    const auto run = tree_approx_graph(z.graph, 0, {FenceMode::exact, {}, tol});
    row.distortion = run.distortion;
    if (row.upsilon > 0.0)
      row.ratio = row.phi / row.upsilon;
    else
      row.ratio = row.phi == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    row.lower = row.hyp > 0.0 ? 2.0 * std::log2(4.0 * static_cast<double>(n)) * row.hyp : 0.0;
    row.phi_upper = row.phi_complete ? std::min(row.phi, *row.phi_complete) : row.phi;
    row.ok = row.lower <= row.phi_upper + tol && run.ok &&
             row.distortion <= std::min(run.bound_main, run.bound_graph) + tol &&
             (R != r || std::abs(row.ratio - 1.0) <= tol);
    rows.push_back(row);
  }
  return rows;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream out;
  out << "n,hyp,upsilon,phi,distortion,ratio\n";
  for (const auto& row : rows)
    out << row.n << ',' << io::format_number(row.hyp) << ',' << io::format_number(row.upsilon) << ','
        << io::format_number(row.phi) << ',' << io::format_number(row.distortion) << ','
        << io::format_number(row.ratio) << '\n';
  return out.str();
}

InstanceKind instance_kind_from_string(const std::string& text) {
  if (text == "poset") return InstanceKind::poset;
  if (text == "graph") return InstanceKind::graph;
  if (text == "metric") return InstanceKind::metric;
  throw Error("unknown instance kind '" + text + "'");
}

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Pairs (a, b) with a < b in a fixed linear extension 0..n-1.
std::vector<OrderPair> random_order_pairs(std::mt19937_64& rng, std::size_t n) {
  std::vector<OrderPair> pairs;
  if (n < 2) return pairs;
  switch (uniform(rng, 0, 3)) {
    case 0:  // rooted tree
      for (Index i = 1; i < n; ++i) pairs.push_back({uniform(rng, 0, i - 1), i});
      return pairs;
    case 1:  // inverted tree
      for (Index i = 1; i < n; ++i) pairs.push_back({n - 1 - i, n - 1 - uniform(rng, 0, i - 1)});
      return pairs;
    default:
      break;
  }
  const bool with_bottom = uniform(rng, 0, 1) == 1;
  const double q = std::uniform_real_distribution<double>(0.15, 0.5)(rng);
  std::bernoulli_distribution coin(q);
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if ((with_bottom && a == 0) || coin(rng)) pairs.push_back({a, b});

  UnionFind components(n);
  for (auto [a, b] : pairs) components.unite(a, b);
  for (Index m = 1; m < n; ++m) {
    // m is the smallest member of its component when nothing earlier joins it.
    bool smallest = true;
    for (Index a = 0; a < m && smallest; ++a) smallest = !components.same(a, m);
    if (!smallest) continue;
    const Index a = uniform(rng, 0, m - 1);
    pairs.push_back({a, m});
    components.unite(a, m);
  }
  return pairs;
}

}  // namespace

Poset random_poset(std::mt19937_64& rng, std::size_t size) {
  if (size == 0) throw Error("random poset needs at least one element");
  auto pairs = random_order_pairs(rng, size);
  std::vector<Index> perm(size);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& [a, b] : pairs) {
    a = perm[a];
    b = perm[b];
  }
  return Poset::from_covers(size, pairs);
}

FilteredPoset random_filtered_poset(std::mt19937_64& rng, std::size_t size, bool strict) {
  auto poset = random_poset(rng, size);
  // A linear extension: sort by the number of elements below.
  std::vector<Index> order(size);
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<std::size_t> below(size, 0);
  for (Index x = 0; x < size; ++x)
    for (Index y = 0; y < size; ++y) below[x] += poset.less(y, x);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return below[a] < below[b]; });

  std::vector<double> f(size, 0.0);
  for (Index x : order) {
    if (poset.covered_by(x).empty()) {
      f[x] = static_cast<double>(uniform(rng, 0, 3));
      continue;
    }
    double value = 0.0;
    for (Index y : poset.covered_by(x))
      value = std::max(value, f[y] + static_cast<double>(strict ? uniform(rng, 1, 3) : uniform(rng, 0, 2)));
    f[x] = value;
  }
  return FilteredPoset(std::move(poset), std::move(f));
}

ReebPoset random_reeb_poset(std::mt19937_64& rng, std::size_t size) {
  return ReebPoset(random_filtered_poset(rng, size, true));
}

MetricGraph random_metric_graph(std::mt19937_64& rng, std::size_t size) {
  if (size == 0) throw Error("random graph needs at least one vertex");
  std::vector<std::string> labels;
  for (Index i = 0; i < size; ++i) labels.push_back("v" + std::to_string(i));
  std::set<std::pair<Index, Index>> used;
  std::vector<Edge> edges;
  auto add = [&](Index a, Index b) {
    if (a > b) std::swap(a, b);
    if (a == b || !used.insert({a, b}).second) return;
    edges.push_back({a, b, static_cast<double>(uniform(rng, 1, 5))});
  };
  for (Index i = 1; i < size; ++i) add(uniform(rng, 0, i - 1), i);
  const std::size_t spare = size * (size - 1) / 2 - edges.size();
  const std::size_t extra = spare ? uniform(rng, 0, std::min(spare, size)) : 0;
  for (std::size_t k = 0; k < extra; ++k) add(uniform(rng, 0, size - 1), uniform(rng, 0, size - 1));
  return MetricGraph(std::move(labels), std::move(edges));
}

FiniteMetricSpace random_metric(std::mt19937_64& rng, std::size_t size) {
  const auto g = random_metric_graph(rng, size);
  std::vector<std::string> labels;
  for (Index i = 0; i < size; ++i) labels.push_back("x" + std::to_string(i));
  return FiniteMetricSpace(std::move(labels), shortest_paths(g));
}

RandomInstances::RandomInstances(InstanceKind kind, std::size_t max_size, std::uint64_t seed)
    : kind_(kind), max_size_(std::max<std::size_t>(max_size, 1)), rng_(seed) {}

Instance RandomInstances::next() {
  switch (kind_) {
    case InstanceKind::poset:
      return random_reeb_poset(rng_, uniform(rng_, 1, max_size_));
    case InstanceKind::graph:
      return random_metric_graph(rng_, uniform(rng_, std::min<std::size_t>(2, max_size_), max_size_));
    case InstanceKind::metric:
      break;
  }
  return random_metric(rng_, uniform(rng_, std::min<std::size_t>(2, max_size_), max_size_));
}

}  // namespace reebforest::bench

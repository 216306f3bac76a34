#include "reebforest/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

namespace reebforest::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_small(std::size_t n) {
  if (n > 16) throw Error("brute-force oracle limited to 16 elements");
}

/// Reduces over every simple comparability path from each source using a
/// (visited set, endpoint) table. `extend` maps a path value and the step to
/// the new value; `better` orders values.
template <typename Start, typename Extend, typename Better>
DistanceMatrix over_simple_paths(const FilteredPoset& fp, double empty_value, Start start_value,
                                 Extend extend, Better better) {
  const std::size_t n = fp.size();
  require_small(n);
  const std::size_t masks = std::size_t{1} << n;
  DistanceMatrix out(n, empty_value);
  std::vector<double> table(masks * n);
  for (Index s = 0; s < n; ++s) {
    std::fill(table.begin(), table.end(), empty_value);
    table[(std::size_t{1} << s) * n + s] = start_value(s);
    for (std::size_t mask = 1; mask < masks; ++mask) {
      if (!(mask >> s & 1)) continue;
      for (Index v = 0; v < n; ++v) {
        const double value = table[mask * n + v];
        if (value == empty_value) continue;
        if (better(value, out(s, v))) out(s, v) = value;
        for (Index u = 0; u < n; ++u) {
          if ((mask >> u & 1) || !fp.poset().comparable(u, v)) continue;
          const double next = extend(value, v, u);
          double& slot = table[(mask | std::size_t{1} << u) * n + u];
          if (better(next, slot)) slot = next;
        }
      }
    }
  }
  return out;
}

}  // namespace

DistanceMatrix induced_metric(const FilteredPoset& fp) {
  return over_simple_paths(
      fp, kInf, [](Index) { return 0.0; },
      [&](double length, Index v, Index u) { return length + std::abs(fp.f(u) - fp.f(v)); },
      [](double a, double b) { return a < b; });
}

DistanceMatrix merge_values(const FilteredPoset& fp) {
  return over_simple_paths(
      fp, -kInf, [&](Index s) { return fp.f(s); },
      [&](double low, Index, Index u) { return std::min(low, fp.f(u)); },
      [](double a, double b) { return a > b; });
}

TreeRelations tree_relations(const FilteredPoset& fp) {
  const std::size_t n = fp.size();
  TreeRelations out{n, std::vector<std::uint8_t>(n * n, 0), std::vector<std::uint8_t>(n * n, 0)};
  // Reachable set from x through points with f >= floor.
  auto reach = [&](Index x, double floor) {
    std::vector<std::uint8_t> seen(n, 0);
    std::queue<Index> queue;
    seen[x] = 1;
    queue.push(x);
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop();
      for (Index u = 0; u < n; ++u)
        if (!seen[u] && u != v && fp.poset().comparable(u, v) && fp.f(u) >= floor) {
          seen[u] = 1;
          queue.push(u);
        }
    }
    return seen;
  };
  for (Index x = 0; x < n; ++x) {
    const auto at_own_level = reach(x, fp.f(x));
    for (Index y = 0; y < n; ++y) {
      out.below[x * n + y] = at_own_level[y];
      out.same[x * n + y] = at_own_level[y] && fp.f(y) == fp.f(x);
    }
  }
  return out;
}

std::vector<Fence> all_fences(const Poset& poset) {
  const std::size_t n = poset.size();
  require_small(n);
  std::vector<Fence> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Index> members;
    for (Index x = 0; x < n; ++x)
      if (mask >> x & 1) members.push_back(x);
    const std::size_t k = members.size();
    std::vector<std::vector<Index>> adj(k);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (poset.comparable(members[i], members[j])) {
          adj[i].push_back(j);
          adj[j].push_back(i);
          ++edges;
        }
    if (edges + 1 != k) continue;
    bool path = true;
    std::size_t start = 0;
    bool found_end = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (adj[i].size() > 2) path = false;
      if (adj[i].size() <= 1 && !found_end) {
        start = i;
        found_end = true;
      }
    }
    if (!path || !found_end) continue;
    std::vector<Index> order{start};
    std::vector<std::uint8_t> used(k, 0);
    used[start] = 1;
    while (order.size() < k) {
      bool moved = false;
      for (std::size_t nb : adj[order.back()])
        if (!used[nb]) {
          used[nb] = 1;
          order.push_back(nb);
          moved = true;
          break;
        }
      if (!moved) break;
    }
    if (order.size() != k) continue;
    Fence fence;
    for (std::size_t i : order) fence.elements.push_back(members[i]);
    out.push_back(std::move(fence));
  }
  return out;
}

std::size_t max_fence_length(const Poset& poset) {
  std::size_t best = 0;
  for (const auto& fence : all_fences(poset)) best = std::max(best, fence.length());
  return best;
}

std::size_t geodesic_count(const MetricGraph& g, Index from, Index to, double tolerance, std::size_t cap) {
  double best = kInf;
  std::vector<double> lengths;
  std::vector<std::uint8_t> on_path(g.vertex_count(), 0);
  std::function<void(Index, double)> walk = [&](Index v, double length) {
    if (length > best + tolerance) return;
    if (v == to) {
      lengths.push_back(length);
      best = std::min(best, length);
      return;
    }
    on_path[v] = 1;
    for (Index e : g.incident(v)) {
      const Index w = g.other_end(e, v);
      if (!on_path[w]) walk(w, length + g.edges()[e].length);
    }
    on_path[v] = 0;
  };
  walk(from, 0.0);
  std::size_t count = 0;
  for (double l : lengths)
    if (l <= best + tolerance && ++count >= cap) break;
  return count;
}

}  // namespace reebforest::oracle

#include "reebforest/poset.hpp"

#include <algorithm>
#include <functional>

#include "reebforest/union_find.hpp"

namespace reebforest {

namespace {

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != n) {
    throw InvariantError("label count " + std::to_string(labels.size()) +
                         " does not match element count " + std::to_string(n));
  }
  return labels;
}

void require_connected(std::size_t n, const std::vector<std::uint8_t>& leq) {
  UnionFind components(n);
  std::size_t merges = 0;
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y)
      if ((leq[x * n + y] || leq[y * n + x]) && components.unite(x, y)) ++merges;
  if (merges + 1 != n) throw InvariantError("poset not connected");
}

}  // namespace

Poset::Poset(std::size_t n, std::vector<std::uint8_t> leq, std::vector<std::string> labels)
    : n_(n), leq_(std::move(leq)), down_(n), up_(n), labels_(std::move(labels)) {
  for (Index x = 0; x < n_; ++x) {
    for (Index y = 0; y < n_; ++y) {
      if (!less(x, y)) continue;
      bool cover = true;
      for (Index z = 0; z < n_ && cover; ++z)
        if (less(x, z) && less(z, y)) cover = false;
      if (cover) {
        down_[y].push_back(x);
        up_[x].push_back(y);
        ++cover_count_;
      }
    }
  }
}

Poset Poset::from_covers(std::size_t n, std::span<const OrderPair> pairs,
                         std::vector<std::string> labels) {
  if (n == 0) throw InvariantError("poset must have at least one element");
  labels = default_labels(n, std::move(labels));
  std::vector<std::uint8_t> leq(n * n, 0);
  for (Index x = 0; x < n; ++x) leq[x * n + x] = 1;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n)
      throw InvariantError("cover pair (" + std::to_string(a) + "," + std::to_string(b) +
                           ") references an element out of range");
    if (a == b) throw InvariantError("not a partial order: element " + labels[a] + " below itself");
    leq[a * n + b] = 1;
  }
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i) {
      if (!leq[i * n + k]) continue;
      for (Index j = 0; j < n; ++j) leq[i * n + j] |= leq[k * n + j];
    }
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y)
      if (leq[x * n + y] && leq[y * n + x])
        throw InvariantError("not a partial order: cycle through " + labels[x] + " and " +
                             labels[y]);
  require_connected(n, leq);
  return Poset(n, std::move(leq), std::move(labels));
}

Poset Poset::from_relation(std::size_t n, std::vector<std::uint8_t> leq,
                           std::vector<std::string> labels) {
  if (n == 0) throw InvariantError("poset must have at least one element");
  if (leq.size() != n * n) throw InvariantError("relation matrix has the wrong size");
  labels = default_labels(n, std::move(labels));
  for (auto& v : leq) v = v ? 1 : 0;
  for (Index x = 0; x < n; ++x)
    if (!leq[x * n + x]) throw InvariantError("not a partial order: not reflexive at " + labels[x]);
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y)
      if (leq[x * n + y] && leq[y * n + x])
        throw InvariantError("not a partial order: " + labels[x] + " and " + labels[y] +
                             " are mutually below each other");
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      if (!leq[x * n + y]) continue;
      for (Index z = 0; z < n; ++z)
        if (leq[y * n + z] && !leq[x * n + z])
          throw InvariantError("not a partial order: transitivity fails for " + labels[x] +
                               " <= " + labels[y] + " <= " + labels[z]);
    }
  require_connected(n, leq);
  return Poset(n, std::move(leq), std::move(labels));
}

std::vector<OrderPair> Poset::cover_pairs() const {
  std::vector<OrderPair> pairs;
  pairs.reserve(cover_count_);
  for (Index x = 0; x < n_; ++x)
    for (Index y : up_[x]) pairs.emplace_back(x, y);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Index> Poset::comparable_to(Index x) const {
  std::vector<Index> out;
  for (Index y = 0; y < n_; ++y)
    if (y != x && comparable(x, y)) out.push_back(y);
  return out;
}

std::optional<Index> Poset::smallest() const {
  for (Index x = 0; x < n_; ++x) {
    if (!down_[x].empty()) continue;
    for (Index y = 0; y < n_; ++y)
      if (!leq(x, y)) return std::nullopt;
    return x;
  }
  return std::nullopt;
}

Poset Poset::with_virtual_bottom(std::string label) const {
  const std::size_t m = n_ + 1;
  std::vector<std::uint8_t> leq(m * m, 0);
  for (Index x = 0; x < n_; ++x)
    for (Index y = 0; y < n_; ++y) leq[x * m + y] = leq_[x * n_ + y];
  for (Index y = 0; y < m; ++y) leq[n_ * m + y] = 1;
  auto labels = labels_;
  labels.push_back(std::move(label));
  return Poset(m, std::move(leq), std::move(labels));
}

bool is_fence(const Poset& poset, std::span<const Index> elements) {
  const std::size_t k = elements.size();
  if (k == 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (elements[i] >= poset.size()) return false;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (elements[i] == elements[j]) return false;
      const bool c = poset.comparable(elements[i], elements[j]);
      if (c != (j == i + 1)) return false;
    }
  }
  return true;
}

std::vector<Index> merging_points(const Poset& poset) {
  std::vector<Index> out;
  for (Index x = 0; x < poset.size(); ++x)
    if (poset.iota(x) > 1) out.push_back(x);
  return out;
}

bool DirectedGraph::is_undirected_forest() const {
  UnionFind uf(vertex_count);
  for (auto [a, b] : edges)
    if (!uf.unite(a, b)) return false;
  return true;
}

DirectedGraph covering_graph(const Poset& poset) {
  return DirectedGraph{poset.size(), poset.cover_pairs()};
}

bool is_tree(const Poset& poset) {
  const bool tree = merging_points(poset).empty();
  // Without a smallest element a vee has an acyclic covering graph but is
  // not a tree, so the cross-check only applies with a bottom.
  if (poset.smallest() && tree != covering_graph(poset).is_undirected_forest())
    throw InvariantError("tree test disagrees with covering-graph acyclicity");
  return tree;
}

BettiNumber betti_covering(const Poset& poset) {
  BettiNumber b;
  b.value = 1 - static_cast<long>(poset.size()) + static_cast<long>(poset.cover_count());
  if (poset.smallest()) {
    long sum = 0;
    for (Index x = 0; x < poset.size(); ++x)
      if (poset.iota(x) >= 1) sum += static_cast<long>(poset.iota(x)) - 1;
    b.iota_sum = sum;
    if (sum != b.value)
      throw InvariantError("Betti number mismatch: Euler " + std::to_string(b.value) +
                           " vs merging sum " + std::to_string(sum));
  }
  return b;
}

const char* to_string(FenceMode mode) { return mode == FenceMode::exact ? "exact" : "bound"; }

FenceMode fence_mode_from_string(const std::string& text) {
  if (text == "exact") return FenceMode::exact;
  if (text == "bound") return FenceMode::bound;
  throw ParseError("unknown fence mode '" + text + "' (expected exact or bound)");
}

namespace {

FenceLength fence_bound(const Poset& poset, const FenceSearchOptions& options) {
  if (poset.smallest()) {
    return {static_cast<std::size_t>(2 * betti_covering(poset).value + 2), FenceMode::bound, {}, 0};
  }
  if (!options.adjoin_virtual_bottom)
    throw InvariantError("bound unavailable: poset has no smallest element");
  const auto extended = poset.with_virtual_bottom();
  return {static_cast<std::size_t>(2 * betti_covering(extended).value + 2), FenceMode::bound, {}, 0};
}

class InducedPathSearch {
 public:
  InducedPathSearch(const Poset& poset, std::uint64_t max_nodes)
      : n_(poset.size()), adj_(n_), blocked_(n_, 0), max_nodes_(max_nodes) {
    for (Index x = 0; x < n_; ++x) adj_[x] = poset.comparable_to(x);
  }

  FenceLength run(std::size_t upper) {
    upper_ = upper;
    best_path_ = {0};
    for (Index start = 0; start < n_ && best_path_.size() - 1 < upper_; ++start) {
      free_ = n_;
      push(start);
      extend();
      pop(start);
    }
    FenceLength out;
    out.value = best_path_.size() - 1;
    out.mode = FenceMode::exact;
    out.witness = Fence{best_path_};
    out.nodes_visited = nodes_;
    return out;
  }

 private:
  void push(Index u) {
    path_.push_back(u);
    if (blocked_[u]++ == 0) --free_;
    for (Index v : adj_[u])
      if (blocked_[v]++ == 0) --free_;
  }

  void pop(Index u) {
    for (Index v : adj_[u])
      if (--blocked_[v] == 0) ++free_;
    if (--blocked_[u] == 0) ++free_;
    path_.pop_back();
  }

  void extend() {
    if (++nodes_ > max_nodes_) throw BudgetExceeded("fence search budget exceeded, use bound");
    if (path_.size() > best_path_.size()) best_path_ = path_;
    if (best_path_.size() - 1 >= upper_) return;
    const Index last = path_.back();
    std::vector<Index> candidates;
    for (Index u : adj_[last])
      if (blocked_[u] == 1) candidates.push_back(u);
    if (candidates.empty()) return;
    if (path_.size() + free_ <= best_path_.size() - 1) return;  // cannot beat best
    for (Index u : candidates) {
      push(u);
      extend();
      pop(u);
      if (best_path_.size() - 1 >= upper_) return;
    }
  }

  std::size_t n_;
  std::vector<std::vector<Index>> adj_;
  std::vector<std::size_t> blocked_;
  std::vector<Index> path_;
  std::vector<Index> best_path_;
  std::size_t free_ = 0;
  std::size_t upper_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t max_nodes_;
};

}  // namespace

FenceLength max_fence_length(const Poset& poset, FenceMode mode,
                             const FenceSearchOptions& options) {
  if (mode == FenceMode::bound) return fence_bound(poset, options);
  if (poset.size() > options.max_elements)
    throw BudgetExceeded("fence search budget exceeded (" + std::to_string(poset.size()) +
                         " elements), use bound");
  std::size_t upper = poset.size() - 1;
  if (poset.smallest())
    upper = std::min<std::size_t>(upper, 2 * betti_covering(poset).value + 2);
  return InducedPathSearch(poset, options.max_nodes).run(upper);
}

std::size_t count_merging_lower_bound(const Fence& fence, const Poset& poset) {
  if (!is_fence(poset, fence.elements)) throw InvariantError("sequence is not a fence");
  const std::size_t l = fence.length();
  return l == 0 ? 0 : (l - 1) / 2;
}

}  // namespace reebforest

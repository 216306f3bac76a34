#include "reebforest/reeb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "reebforest/union_find.hpp"

namespace reebforest {

namespace {

std::string join_labels(const Poset& poset, const std::vector<Index>& members) {
  std::string out;
  for (Index m : members) {
    if (!out.empty()) out += '|';
    out += poset.label(m);
  }
  return out;
}

/// Renumbers classes so that class ids follow (f ascending, smallest member).
std::vector<Index> canonical_class_order(const std::vector<Index>& raw_class, std::size_t classes,
                                         const std::vector<double>& f) {
  std::vector<Index> first(classes, std::numeric_limits<Index>::max());
  for (Index x = 0; x < raw_class.size(); ++x) first[raw_class[x]] = std::min(first[raw_class[x]], x);
  std::vector<Index> order(classes);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double fa = f[first[a]], fb = f[first[b]];
    if (fa != fb) return fa < fb;
    return first[a] < first[b];
  });
  std::vector<Index> rename(classes);
  for (Index i = 0; i < classes; ++i) rename[order[i]] = i;
  return rename;
}

}  // namespace

FilteredPoset::FilteredPoset(Poset poset, std::vector<double> f)
    : poset_(std::move(poset)), f_(std::move(f)) {
  if (f_.size() != poset_.size())
    throw InvariantError("filtration has " + std::to_string(f_.size()) + " values for " +
                         std::to_string(poset_.size()) + " elements");
  for (Index x = 0; x < f_.size(); ++x) {
    if (!std::isfinite(f_[x])) throw InvariantError("filtration value at " + poset_.label(x) + " is not finite");
    for (Index y : poset_.covering(x))
      if (f_[x] > f_[y])
        throw InvariantError("filtration not order preserving: " + poset_.label(x) + " < " +
                             poset_.label(y) + " but f decreases");
  }
}

bool FilteredPoset::is_strict() const {
  for (Index x = 0; x < size(); ++x)
    for (Index y : poset_.covering(x))
      if (!(f_[x] < f_[y])) return false;
  return true;
}

ReebPoset::ReebPoset(FilteredPoset filtered) : filtered_(std::move(filtered)) {
  if (!filtered_.is_strict())
    throw InvariantError("filtration is not strictly order preserving");
}

ReebTree::ReebTree(std::vector<std::optional<Index>> parent, std::vector<double> f,
                   std::vector<std::string> labels)
    : ReebTree(
          [&] {
            const std::size_t n = parent.size();
            std::vector<OrderPair> covers;
            for (Index x = 0; x < n; ++x)
              if (parent[x]) covers.emplace_back(*parent[x], x);
            return ReebPoset(Poset::from_covers(n, covers, std::move(labels)), std::move(f));
          }(),
          parent) {}

ReebTree::ReebTree(ReebPoset reeb, std::vector<std::optional<Index>> parent)
    : reeb_(std::move(reeb)), parent_(std::move(parent)), depth_(parent_.size(), 0) {
  const auto& poset = reeb_.poset();
  if (!is_tree(poset)) throw InvariantError("Reeb tree poset has a merging point");
  std::size_t roots = 0;
  for (Index x = 0; x < size(); ++x) {
    const auto& down = poset.covered_by(x);
    if (parent_[x]) {
      if (down.size() != 1 || down.front() != *parent_[x])
        throw InvariantError("parent link of " + poset.label(x) + " is not its cover");
    } else {
      ++roots;
      root_ = x;
    }
  }
  if (roots != 1) throw InvariantError("Reeb tree must have exactly one root");
  for (Index x = 0; x < size(); ++x) {
    std::size_t d = 0;
    for (auto p = parent_[x]; p; p = parent_[*p]) ++d;
    depth_[x] = d;
  }
}

Index ReebTree::meet(Index x, Index y) const {
  while (depth_[x] > depth_[y]) x = *parent_[x];
  while (depth_[y] > depth_[x]) y = *parent_[y];
  while (x != y) {
    x = *parent_[x];
    y = *parent_[y];
  }
  return x;
}

std::size_t Projection::target_size() const {
  return map.empty() ? 0 : *std::max_element(map.begin(), map.end()) + 1;
}

ReebQuotient reeb_poset(const FilteredPoset& fp) {
  const auto& poset = fp.poset();
  const std::size_t n = fp.size();
  UnionFind classes(n);
  for (Index x = 0; x < n; ++x)
    for (Index y : poset.covering(x))
      if (fp.f(x) == fp.f(y)) classes.unite(x, y);
  // Covers suffice: an f-constant comparable pair is joined by an f-constant
  // chain of covers because f is order preserving.

  std::vector<Index> raw(n);
  std::map<Index, Index> root_id;
  for (Index x = 0; x < n; ++x) {
    const Index r = classes.find(x);
    auto [it, inserted] = root_id.try_emplace(r, root_id.size());
    raw[x] = it->second;
  }
  const std::size_t k = root_id.size();
  const auto rename = canonical_class_order(raw, k, fp.f());

  Projection proj{std::vector<Index>(n)};
  std::vector<std::vector<Index>> members(k);
  std::vector<double> f(k);
  for (Index x = 0; x < n; ++x) {
    proj.map[x] = rename[raw[x]];
    members[proj.map[x]].push_back(x);
    f[proj.map[x]] = fp.f(x);
  }
  std::vector<OrderPair> pairs;
  for (Index x = 0; x < n; ++x)
    for (Index y : poset.covering(x))
      if (proj.map[x] != proj.map[y]) pairs.emplace_back(proj.map[x], proj.map[y]);
  std::vector<std::string> labels;
  for (const auto& m : members) labels.push_back(join_labels(poset, m));

  return {ReebPoset(Poset::from_covers(k, pairs, std::move(labels)), std::move(f)), std::move(proj)};
}

TreeQuotient reeb_tree(const FilteredPoset& fp) {
  const auto& poset = fp.poset();
  const std::size_t n = fp.size();

  std::vector<Index> by_level(n);
  std::iota(by_level.begin(), by_level.end(), Index{0});
  std::stable_sort(by_level.begin(), by_level.end(),
                   [&](Index a, Index b) { return fp.f(a) > fp.f(b); });

  UnionFind uf(n);
  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::optional<Index>> lowest(n);  // keyed by union-find root
  std::vector<Index> roots;                      // roots carrying a node
  std::vector<Index> node_of(n);
  std::vector<std::optional<Index>> node_parent;
  std::vector<double> node_level;

  for (std::size_t begin = 0; begin < n;) {
    const double level = fp.f(by_level[begin]);
    std::size_t end = begin;
    while (end < n && fp.f(by_level[end]) == level) ++end;

    for (std::size_t i = begin; i < end; ++i) active[by_level[i]] = 1;
    for (std::size_t i = begin; i < end; ++i) {
      const Index x = by_level[i];
      for (Index y : poset.comparable_to(x))
        if (active[y]) uf.unite(x, y);
    }

    std::map<Index, Index> fresh;  // root -> node created at this level
    for (std::size_t i = begin; i < end; ++i) {
      const Index x = by_level[i];
      const Index r = uf.find(x);
      auto [it, inserted] = fresh.try_emplace(r, node_level.size());
      if (inserted) {
        node_level.push_back(level);
        node_parent.emplace_back();
      }
      node_of[x] = it->second;
    }

    std::vector<Index> surviving;
    for (Index old_root : roots) {
      const Index r = uf.find(old_root);
      if (auto it = fresh.find(r); it != fresh.end()) {
        node_parent[*lowest[old_root]] = it->second;
      } else {
        surviving.push_back(old_root);
      }
    }
    for (auto [r, node] : fresh) {
      lowest[r] = node;
      surviving.push_back(r);
    }
    roots = std::move(surviving);
    begin = end;
  }
  if (roots.size() != 1) throw InvariantError("filtered poset is not connected");

  const std::size_t k = node_level.size();
  const auto rename = canonical_class_order(node_of, k, fp.f());
  Projection proj{std::vector<Index>(n)};
  std::vector<std::vector<Index>> members(k);
  for (Index x = 0; x < n; ++x) {
    proj.map[x] = rename[node_of[x]];
    members[proj.map[x]].push_back(x);
  }
  std::vector<std::optional<Index>> parent(k);
  std::vector<double> f(k);
  for (Index node = 0; node < k; ++node) {
    f[rename[node]] = node_level[node];
    if (node_parent[node]) parent[rename[node]] = rename[*node_parent[node]];
  }
  std::vector<std::string> labels;
  for (const auto& m : members) labels.push_back(join_labels(poset, m));
  return {ReebTree(std::move(parent), std::move(f), std::move(labels)), std::move(proj)};
}

DistanceMatrix induced_metric(const FilteredPoset& fp) {
  const std::size_t n = fp.size();
  const double inf = std::numeric_limits<double>::infinity();
  DistanceMatrix d(n, inf);
  for (Index x = 0; x < n; ++x) {
    d(x, x) = 0.0;
    for (Index y = 0; y < n; ++y)
      if (x != y && fp.poset().comparable(x, y)) d(x, y) = std::abs(fp.f(x) - fp.f(y));
  }
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i) {
      const double dik = d(i, k);
      if (dik == inf) continue;
      for (Index j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), dik + d(k, j));
    }
  return d;
}

DistanceMatrix merge_values(const FilteredPoset& fp) {
  const std::size_t n = fp.size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return fp.f(a) > fp.f(b); });

  DistanceMatrix m(n, -std::numeric_limits<double>::infinity());
  UnionFind uf(n);
  std::vector<std::vector<Index>> members(n);
  std::vector<std::uint8_t> added(n, 0);
  for (Index x : order) {
    added[x] = 1;
    members[x] = {x};
    m(x, x) = fp.f(x);
    for (Index y : fp.poset().comparable_to(x)) {
      if (!added[y]) continue;
      Index a = uf.find(x), b = uf.find(y);
      if (a == b) continue;
      for (Index u : members[a])
        for (Index v : members[b]) m(u, v) = m(v, u) = fp.f(x);
      uf.unite(a, b);
      const Index r = uf.find(a);
      const Index other = r == a ? b : a;
      members[r].insert(members[r].end(), members[other].begin(), members[other].end());
      members[other].clear();
    }
  }
  return m;
}

DistanceMatrix tree_metric(const ReebTree& tree) {
  const std::size_t n = tree.size();
  DistanceMatrix t(n, 0.0);
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y)
      t(x, y) = t(y, x) = tree.f(x) + tree.f(y) - 2.0 * tree.f(tree.meet(x, y));
  return t;
}

DistanceMatrix pull_back(const DistanceMatrix& target_metric, const Projection& projection) {
  const std::size_t n = projection.map.size();
  DistanceMatrix out(n, 0.0);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) out(x, y) = target_metric(projection(x), projection(y));
  return out;
}

DistanceMatrix gromov_products(const ReebPoset& rp, const DistanceMatrix& df) {
  const std::size_t n = rp.size();
  DistanceMatrix g(n, 0.0);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) g(x, y) = (rp.f(x) + rp.f(y) - df(x, y)) / 2.0;
  return g;
}

DistanceMatrix gromov_products(const ReebPoset& rp) {
  return gromov_products(rp, induced_metric(rp.filtered()));
}

Hyperbolicity hyperbolicity_of_products(const DistanceMatrix& g) {
  Hyperbolicity best;
  const std::size_t n = g.size();
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const double gxy = g(x, y);
      for (Index z = 0; z < n; ++z) {
        const double defect = std::min(gxy, g(y, z)) - g(x, z);
        if (defect > best.value) best = {defect, x, y, z};
      }
    }
  return best;
}

Hyperbolicity hyp_poset(const ReebPoset& rp) { return hyperbolicity_of_products(gromov_products(rp)); }

double main_bound(std::size_t max_fence, double hyp) {
  if (hyp <= 0.0 || max_fence == 0) return 0.0;
  return 2.0 * std::log2(2.0 * static_cast<double>(max_fence)) * hyp;
}

PosetApproximation approximation_bound(const ReebPoset& rp, const PosetApproximationOptions& options) {
  return approximation_bound(rp, reeb_tree(rp.filtered()), options);
}

PosetApproximation approximation_bound(const ReebPoset& rp, const TreeQuotient& quotient,
                                       const PosetApproximationOptions& options) {
  const std::size_t n = rp.size();
  const auto df = induced_metric(rp.filtered());
  const auto tf = pull_back(tree_metric(quotient.tree), quotient.projection);
  const auto m = merge_values(rp.filtered());
  const auto g = gromov_products(rp, df);

  PosetApproximation out;
  out.min_merge_minus_product = std::numeric_limits<double>::infinity();
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const double gap = df(x, y) - tf(x, y);
      if (std::abs(gap) > out.distortion) {
        out.distortion = std::abs(gap);
        out.worst_x = x;
        out.worst_y = y;
      }
      out.identity_residual = std::max(out.identity_residual, std::abs(gap - 2.0 * (m(x, y) - g(x, y))));
      out.min_merge_minus_product = std::min(out.min_merge_minus_product, m(x, y) - g(x, y));
      const Index meet = quotient.tree.meet(quotient.projection(x), quotient.projection(y));
      out.meet_residual = std::max(out.meet_residual, std::abs(quotient.tree.f(meet) - m(x, y)));
    }
  out.hyp = hyperbolicity_of_products(g);

  if (options.mode == FenceMode::exact) {
    try {
      out.max_fence = max_fence_length(rp.poset(), FenceMode::exact, options.search);
    } catch (const BudgetExceeded&) {
      out.max_fence = max_fence_length(rp.poset(), FenceMode::bound, options.search);
      out.fence_fallback = true;
    }
  } else {
    out.max_fence = max_fence_length(rp.poset(), FenceMode::bound, options.search);
  }
  out.bound = main_bound(out.max_fence.value, out.hyp.value);
  const double tol = options.tolerance;
  out.ok = out.distortion <= out.bound + tol && out.identity_residual <= tol &&
           out.meet_residual <= tol && out.min_merge_minus_product >= -tol;
  return out;
}

}  // namespace reebforest

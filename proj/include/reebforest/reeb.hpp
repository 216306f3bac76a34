#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reebforest/common.hpp"
#include "reebforest/poset.hpp"

namespace reebforest {

/// A poset with an order-preserving real filtration: x <= y implies f(x) <= f(y).
class FilteredPoset {
 public:
  FilteredPoset(Poset poset, std::vector<double> f);

  const Poset& poset() const noexcept { return poset_; }
  const std::vector<double>& f() const noexcept { return f_; }
  double f(Index x) const { return f_[x]; }
  std::size_t size() const noexcept { return poset_.size(); }

  /// x < y implies f(x) < f(y).
  bool is_strict() const;

 private:
  Poset poset_;
  std::vector<double> f_;
};

/// Filtered poset whose filtration is strictly order preserving.
class ReebPoset {
 public:
  explicit ReebPoset(FilteredPoset filtered);
  ReebPoset(Poset poset, std::vector<double> f) : ReebPoset(FilteredPoset(std::move(poset), std::move(f))) {}

  const FilteredPoset& filtered() const noexcept { return filtered_; }
  const Poset& poset() const noexcept { return filtered_.poset(); }
  const std::vector<double>& f() const noexcept { return filtered_.f(); }
  double f(Index x) const { return filtered_.f(x); }
  std::size_t size() const noexcept { return filtered_.size(); }

 private:
  FilteredPoset filtered_;
};

/// Reeb poset whose order is a tree, with parent links toward the root.
class ReebTree {
 public:
  /// Builds the tree from parent links (root has no parent).
  ReebTree(std::vector<std::optional<Index>> parent, std::vector<double> f,
           std::vector<std::string> labels = {});

  const ReebPoset& reeb() const noexcept { return reeb_; }
  const Poset& poset() const noexcept { return reeb_.poset(); }
  double f(Index x) const { return reeb_.f(x); }
  std::size_t size() const noexcept { return reeb_.size(); }

  std::optional<Index> parent(Index x) const { return parent_[x]; }
  Index root() const noexcept { return root_; }
  std::size_t depth(Index x) const { return depth_[x]; }

  /// Largest common lower bound of x and y.
  Index meet(Index x, Index y) const;

 private:
  ReebTree(ReebPoset reeb, std::vector<std::optional<Index>> parent);

  ReebPoset reeb_;
  std::vector<std::optional<Index>> parent_;
  std::vector<std::size_t> depth_;
  Index root_ = 0;
};

/// Surjective, order-preserving, f-preserving map from a source poset to
/// its quotient; map[x] is the class of x.
struct Projection {
  std::vector<Index> map;

  Index operator()(Index x) const { return map[x]; }
  std::size_t target_size() const;
};

struct ReebQuotient {
  ReebPoset reeb;
  Projection projection;
};

struct TreeQuotient {
  ReebTree tree;
  Projection projection;
};

/// R_f: collapse f-constant comparability components; order classes by
/// reachability along comparable steps.
ReebQuotient reeb_poset(const FilteredPoset& fp);

/// T_f: the merge tree of f, built by sweeping levels from the top with a
/// union-find over comparability edges.
TreeQuotient reeb_tree(const FilteredPoset& fp);

/// d_f: shortest paths in the comparability graph weighted by |f(u) - f(v)|.
DistanceMatrix induced_metric(const FilteredPoset& fp);

/// m_f(x, y) for all pairs: largest level at which x and y share a
/// superlevel component.
DistanceMatrix merge_values(const FilteredPoset& fp);

/// t_f(x, y) = f(x) + f(y) - 2 f(meet(x, y)).
DistanceMatrix tree_metric(const ReebTree& tree);

/// Pulls a quotient metric back along a projection.
DistanceMatrix pull_back(const DistanceMatrix& target_metric, const Projection& projection);

/// g_f(x, y) = (f(x) + f(y) - d_f(x, y)) / 2 for all pairs.
DistanceMatrix gromov_products(const ReebPoset& rp, const DistanceMatrix& df);
DistanceMatrix gromov_products(const ReebPoset& rp);

/// A hyperbolicity value with a triple realizing it.
struct Hyperbolicity {
  double value = 0.0;
  Index x = 0, y = 0, z = 0;
};

/// Smallest eps >= 0 with g(x,z) >= min(g(x,y), g(y,z)) - eps over all
/// triples, given the Gromov product matrix.
Hyperbolicity hyperbolicity_of_products(const DistanceMatrix& products);

Hyperbolicity hyp_poset(const ReebPoset& rp);

/// 2 log2(2 M_F) hyp, with the convention that it is 0 when hyp is 0.
double main_bound(std::size_t max_fence, double hyp);

struct PosetApproximation {
  double distortion = 0.0;
  Index worst_x = 0, worst_y = 0;
  Hyperbolicity hyp;
  FenceLength max_fence;
  bool fence_fallback = false;   ///< exact search exceeded budget, bound used
  double bound = 0.0;
  double identity_residual = 0.0;  ///< max |(d - t) - 2 (m - g)| over pairs
  double meet_residual = 0.0;      ///< max |f(meet(pi x, pi y)) - m(x, y)|
  double min_merge_minus_product = 0.0;  ///< min over pairs of m - g
  bool ok = false;
};

struct PosetApproximationOptions {
  FenceMode mode = FenceMode::exact;
  FenceSearchOptions search;
  double tolerance = kDefaultTolerance;
};

/// Evaluates the tree approximation of a Reeb poset by its Reeb tree and the
/// certified bound 2 log2(2 M_F) hyp_f on its distortion.
PosetApproximation approximation_bound(const ReebPoset& rp, const PosetApproximationOptions& options = {});

/// The same evaluation reusing precomputed pieces.
PosetApproximation approximation_bound(const ReebPoset& rp, const TreeQuotient& tree,
                                       const PosetApproximationOptions& options);

}  // namespace reebforest

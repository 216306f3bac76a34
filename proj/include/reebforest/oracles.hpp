#pragma once

#include <cstdint>
#include <vector>

#include "reebforest/common.hpp"
#include "reebforest/graph.hpp"
#include "reebforest/poset.hpp"
#include "reebforest/reeb.hpp"

// Brute-force references, written straight from the definitions and kept
// away from the production code paths they are compared against. All of
// them are exponential and meant for inputs of a dozen elements or fewer.
namespace reebforest::oracle {

/// Minimal l_f length over every simple comparability path (subset DP).
DistanceMatrix induced_metric(const FilteredPoset& fp);

/// Max over simple comparability paths of the minimum of f along the path.
DistanceMatrix merge_values(const FilteredPoset& fp);

/// The Reeb tree relations read off the definition: x ~ y iff some path
/// from x to y stays at or above max(f(x), f(y)); class(x) <= class(y) iff
/// some path from x to y stays at or above f(x).
struct TreeRelations {
  std::size_t n = 0;
  std::vector<std::uint8_t> same;  ///< n x n
  std::vector<std::uint8_t> below; ///< n x n
};

TreeRelations tree_relations(const FilteredPoset& fp);

/// Element subsets whose induced comparability graph is a path, listed as
/// fences in path order.
std::vector<Fence> all_fences(const Poset& poset);

/// Largest fence length by subset enumeration.
std::size_t max_fence_length(const Poset& poset);

/// Number of distinct shortest paths between two vertices (up to `cap`).
std::size_t geodesic_count(const MetricGraph& g, Index from, Index to, double tolerance,
                           std::size_t cap = 2);

}  // namespace reebforest::oracle

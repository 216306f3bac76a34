#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reebforest/common.hpp"

namespace reebforest {

/// An ordered pair (lower, upper) with upper covering (or above) lower.
using OrderPair = std::pair<Index, Index>;

/**
 * Finite connected partial order on the elements {0, ..., n-1}.
 *
 * The full relation is stored as a dense boolean matrix; covers are the
 * transitive reduction of it. Instances are immutable once built.
 */
class Poset {
 public:
  /// Closure of the given pairs; each pair (a, b) asserts a < b.
  /// Throws InvariantError("not a partial order") on a cycle and
  /// InvariantError("poset not connected") when the comparability graph
  /// is disconnected.
  static Poset from_covers(std::size_t n, std::span<const OrderPair> pairs,
                           std::vector<std::string> labels = {});

  /// Takes a full relation (row-major, leq[x*n+y] meaning x <= y) and
  /// validates reflexivity, antisymmetry, transitivity and connectivity.
  static Poset from_relation(std::size_t n, std::vector<std::uint8_t> leq,
                             std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }

  bool leq(Index x, Index y) const { return leq_[x * n_ + y] != 0; }
  bool less(Index x, Index y) const { return x != y && leq(x, y); }
  bool comparable(Index x, Index y) const { return leq(x, y) || leq(y, x); }

  /// Elements covered by x (the down-covers); iota(x) is its size.
  const std::vector<Index>& covered_by(Index x) const { return down_[x]; }
  /// Elements covering x.
  const std::vector<Index>& covering(Index x) const { return up_[x]; }
  std::size_t iota(Index x) const { return down_[x].size(); }

  /// All cover pairs (lower, upper), sorted.
  std::vector<OrderPair> cover_pairs() const;
  std::size_t cover_count() const noexcept { return cover_count_; }

  /// Distinct neighbours of x in the comparability graph, ascending.
  std::vector<Index> comparable_to(Index x) const;

  std::optional<Index> smallest() const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Index x) const { return labels_[x]; }

  /// Copy with a new element adjoined below everything (index n).
  Poset with_virtual_bottom(std::string label = "_bottom") const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.n_ == b.n_ && a.leq_ == b.leq_;
  }

 private:
  Poset(std::size_t n, std::vector<std::uint8_t> leq, std::vector<std::string> labels);

  std::size_t n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<std::vector<Index>> down_;
  std::vector<std::vector<Index>> up_;
  std::size_t cover_count_ = 0;
  std::vector<std::string> labels_;
};

/// A zigzag x0 < x1 > x2 < ... (or its dual) inside a poset.
struct Fence {
  std::vector<Index> elements;

  std::size_t length() const { return elements.empty() ? 0 : elements.size() - 1; }
};

/// True when consecutive elements are comparable, all others are not, and
/// elements are distinct. Alternation follows from these conditions.
bool is_fence(const Poset& poset, std::span<const Index> elements);

std::vector<Index> merging_points(const Poset& poset);

/// No merging points. In checked builds this also asserts agreement with
/// the covering-graph characterization when a smallest element exists.
bool is_tree(const Poset& poset);

/// Directed covering graph: edge (x, y) whenever y covers x.
struct DirectedGraph {
  std::size_t vertex_count = 0;
  std::vector<OrderPair> edges;

  /// Acyclic when the edge directions are ignored.
  bool is_undirected_forest() const;
};

DirectedGraph covering_graph(const Poset& poset);

struct BettiNumber {
  long value = 0;                 ///< 1 - V + E of the covering graph
  std::optional<long> iota_sum;   ///< sum of (iota(x) - 1); set when a smallest element exists
};

/// First Betti number of the covering graph. When the poset has a smallest
/// element both formulas are evaluated and must agree.
BettiNumber betti_covering(const Poset& poset);

enum class FenceMode { exact, bound };

const char* to_string(FenceMode mode);
FenceMode fence_mode_from_string(const std::string& text);

struct FenceSearchOptions {
  std::size_t max_elements = 64;
  std::uint64_t max_nodes = 20'000'000;
  /// In bound mode, adjoin a bottom element when the poset lacks one.
  bool adjoin_virtual_bottom = false;
};

struct FenceLength {
  std::size_t value = 0;
  FenceMode mode = FenceMode::exact;
  std::optional<Fence> witness;  ///< a longest fence, exact mode only
  std::uint64_t nodes_visited = 0;
};

/// Maximal fence length M_F. Exact mode runs a depth-first search over
/// induced paths of the comparability graph; bound mode returns 2*beta + 2
/// and needs a smallest element. Throws BudgetExceeded or InvariantError
/// ("bound unavailable") accordingly.
FenceLength max_fence_length(const Poset& poset, FenceMode mode,
                             const FenceSearchOptions& options = {});

/// Lower bound floor((l - 1) / 2) on the number of merging points forced by
/// a fence of length l.
std::size_t count_merging_lower_bound(const Fence& fence, const Poset& poset);

}  // namespace reebforest

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "reebforest/graph.hpp"
#include "reebforest/metric.hpp"
#include "reebforest/metric_space.hpp"
#include "reebforest/poset.hpp"
#include "reebforest/reeb.hpp"

namespace reebforest::bench {

/// The 2n + 2 point family {p, x0..xn, y1..yn} on a fan of n "bananas":
/// p-x_i of length R, x_{i-1}-y_i and x_i-y_i of length r.
struct ZnInstance {
  std::size_t n = 0;
  double R = 1.0;
  double r = 1.0;
  MetricGraph graph;
  std::vector<std::string> sample;        ///< p, x0..xn, y1..yn
  std::vector<std::string> fence_labels;  ///< x0, y1, x1, ..., yn, xn
};

ZnInstance make_zn(std::size_t n, double R, double r);

/// The sample points with the metric of the graph.
FiniteMetricSpace zn_metric(const ZnInstance& z);

struct LowerBoundCheck {
  bool fence_found = false;
  std::size_t fence_length = 0;
  long betti = 0;
  bool betti_ok = false;  ///< beta >= n - 1
  bool ok = false;
};

/// Regularizes `g` at p and confirms that the 2n-fence survives in <=_p and
/// that beta_1 >= n - 1. Throws when g is not isometric on the sample.
LowerBoundCheck verify_lower_bound_argument(const ZnInstance& z, const MetricGraph& g);

struct GrowthRow {
  std::size_t n = 0;
  double hyp = 0.0;             ///< hyp(Z_n), exact
  double upsilon = 0.0;         ///< 2 log2(4n + 4) hyp(Z_n)
  double phi = 0.0;             ///< phi of the banana graph at p
  std::optional<double> phi_complete;  ///< phi of the complete graph on Z_n at p
  double distortion = 0.0;      ///< pipeline on the banana graph, over Z_n
  double ratio = 0.0;           ///< phi / upsilon
  double lower = 0.0;           ///< 2 log2(4n) hyp(Z_n)
  double phi_upper = 0.0;       ///< min over the evaluated embeddings
  bool ok = false;
};

struct GrowthOptions {
  /// Largest n for which the complete-graph embedding is also evaluated.
  std::size_t complete_graph_max_n = 4;
  double tolerance = kDefaultTolerance;
};

std::vector<GrowthRow> growth_comparison(std::size_t n_first, std::size_t n_last, double R, double r,
                                         const GrowthOptions& options = {});

/// CSV with columns n, hyp, upsilon, phi, distortion, ratio.
std::string growth_csv(const std::vector<GrowthRow>& rows);

// --- random instances --------------------------------------------------------

enum class InstanceKind { poset, graph, metric };

InstanceKind instance_kind_from_string(const std::string& text);

/// Connected poset on `size` elements with randomly permuted indices.
Poset random_poset(std::mt19937_64& rng, std::size_t size);
/// Order-preserving filtration with integer values; strict when asked.
FilteredPoset random_filtered_poset(std::mt19937_64& rng, std::size_t size, bool strict);
ReebPoset random_reeb_poset(std::mt19937_64& rng, std::size_t size);
/// Connected simple graph with integer edge lengths in [1, 5].
MetricGraph random_metric_graph(std::mt19937_64& rng, std::size_t size);
/// Shortest-path metric of a random graph.
FiniteMetricSpace random_metric(std::mt19937_64& rng, std::size_t size);

using Instance = std::variant<ReebPoset, MetricGraph, FiniteMetricSpace>;

/// Deterministic stream of instances of at most `max_size` elements.
class RandomInstances {
 public:
  RandomInstances(InstanceKind kind, std::size_t max_size, std::uint64_t seed);
  Instance next();

 private:
  InstanceKind kind_;
  std::size_t max_size_;
  std::mt19937_64 rng_;
};

// --- verification ------------------------------------------------------------

struct SuiteResult {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

struct VerificationSummary {
  std::map<std::string, SuiteResult> suites;
  std::size_t instances = 0;
  bool ok() const;
  nlohmann::json to_json() const;
};

/// Re-checks every computable inequality and oracle equivalence on `count`
/// random Reeb posets and `count` random metric graphs.
VerificationSummary run_verification(std::uint64_t seed, std::size_t count, std::size_t size);

}  // namespace reebforest::bench

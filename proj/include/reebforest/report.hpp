#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "reebforest/graph.hpp"
#include "reebforest/poset.hpp"
#include "reebforest/reeb.hpp"

namespace reebforest {

/// Observed distortion of a tree approximation together with every bound
/// that applies to it and a pass flag per inequality.
struct ApproximationReport {
  std::string base;
  std::size_t points = 0;                 ///< original vertices (or points)
  std::size_t regularized_vertices = 0;

  double distortion = 0.0;
  std::string worst_x, worst_y;

  double hyp = 0.0;     ///< hyperbolicity of the regularized vertex set
  double hyp_p = 0.0;   ///< hyperbolicity based at the base point
  double hyp_f = 0.0;   ///< poset hyperbolicity of the induced Reeb poset

  std::size_t max_fence = 0;
  FenceMode max_fence_mode = FenceMode::exact;
  bool max_fence_fallback = false;
  long betti = 0;
  long two_beta_plus_two = 0;

  double bound_main = 0.0;
  double bound_graph = 0.0;
  double bound_graph_p = 0.0;
  std::optional<double> upsilon;
  std::optional<double> phi_of_G;
  std::optional<double> phi_complete_graph;
  std::optional<double> phi_upper_bound;

  std::size_t collapsed_pairs = 0;
  double four_point_defect = 0.0;  ///< hyperbolicity of the output tree metric

  std::map<std::string, bool> checks;
  bool ok = false;
  RegularizationTrace trace;
};

/// Report for a graph pipeline run with distortion, collapsed pairs and the
/// four-point defect taken over `points` (indices into the regularized graph).
ApproximationReport make_report(const GraphApproximation& run, const std::vector<Index>& points,
                                double tolerance = kDefaultTolerance);

/// As above over the first `original_vertices` vertices.
ApproximationReport make_report(const GraphApproximation& run, std::size_t original_vertices,
                                double tolerance = kDefaultTolerance);

/// Rounds to 12 significant digits, the precision of every emitted number.
double round12(double value);

nlohmann::json to_json(const ApproximationReport& report);

/// Compact poset report: distortion, hyp_f, MF, MF_mode, bound, ok.
nlohmann::json to_json(const PosetApproximation& result);

}  // namespace reebforest

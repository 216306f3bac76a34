#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "reebforest/graph.hpp"
#include "reebforest/metric.hpp"
#include "reebforest/poset.hpp"
#include "reebforest/reeb.hpp"

namespace reebforest::io {

/// "%.12g".
std::string format_number(double value);

/// Parses JSON text, reporting syntax errors as ParseError with line/column.
nlohmann::json parse_json(const std::string& text);

// Poset: {"n": int, "covers": [[i, j], ...], "labels": [...]?}; [i, j] means i < j.
// Filtered poset: the same plus "f": [real, ...].
Poset poset_from_json(const nlohmann::json& j);
FilteredPoset filtered_poset_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Poset& poset);
nlohmann::json to_json(const FilteredPoset& fp);

// Graph: {"vertices": [str, ...], "edges": [[u, v, length], ...], "base": str?}.
MetricGraph graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MetricGraph& g);

/// Edge list, one "u<TAB>v<TAB>length" per line; '#' starts a comment.
MetricGraph graph_from_tsv(const std::string& text);

/// Square distance matrix, header row of labels, one row per point. A row
/// may start with its label.
FiniteMetricSpace metric_from_csv(const std::string& text);
/// {"labels": [...], "d": [[...], ...]}.
FiniteMetricSpace metric_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FiniteMetricSpace& space);
std::string to_csv(const FiniteMetricSpace& space);

enum class InputFormat { automatic, graph_json, edge_tsv, matrix_csv, matrix_json, poset_json };

InputFormat input_format_from_string(const std::string& text);
const char* to_string(InputFormat format);

/// Extension first (.tsv, .csv, .json), then a look at the content.
InputFormat detect_format(const std::filesystem::path& path, const std::string& content);

using Input = std::variant<MetricGraph, FiniteMetricSpace, FilteredPoset>;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

Input parse_input(const std::string& content, InputFormat format);
Input load_input(const std::filesystem::path& path, InputFormat format = InputFormat::automatic);

/// Newick with branch length f(child) - f(parent); node names are the
/// labels of the tree elements.
std::string to_newick(const ReebTree& tree);

struct NewickNode {
  std::string label;
  std::optional<double> length;
  std::vector<NewickNode> children;
};

NewickNode parse_newick(const std::string& text);

/// Path-length distances between all labeled nodes of a parsed tree.
struct NewickDistances {
  std::map<std::string, Index> index;
  DistanceMatrix d;
};

NewickDistances newick_distances(const NewickNode& root);

/// Covering graph, edges pointing from covered to covering element, nodes
/// with equal f placed on one rank.
std::string covering_graph_dot(const FilteredPoset& fp, const std::string& name = "covering");
std::string tree_dot(const ReebTree& tree, const std::string& name = "reeb_tree");

}  // namespace reebforest::io

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "reebforest/bench.hpp"
#include "reebforest/io.hpp"
#include "reebforest/metric_space.hpp"
#include "reebforest/report.hpp"

using namespace reebforest;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInequality = 1, kParse = 2, kInvariant = 3 };

struct Config {
  std::string input;
  std::string format = "auto";
  std::optional<std::string> base;
  std::string mf_mode = "exact";
  double tol = kDefaultTolerance;
  std::uint64_t seed = 7;
  std::size_t count = 500;
  std::size_t size = 10;
  std::string out_tree, out_dot, out_report;
  std::string n_range = "1..8";
  double R = 1.0;
  double r = 1.0;
};

io::Input load(const Config& c) { return io::load_input(c.input, io::input_format_from_string(c.format)); }

void emit(const std::string& path, const std::string& text) {
  if (!path.empty()) io::write_file(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

GraphApproximation run_graph(const MetricGraph& g, const Config& c) {
  const GraphApproximationOptions options{fence_mode_from_string(c.mf_mode), {}, c.tol};
  if (c.base) return tree_approx_graph(g, g.index_of(*c.base), options);
  return tree_approx_graph(g, options);
}

ReebPoset as_reeb(const FilteredPoset& fp) {
  if (fp.is_strict()) return ReebPoset(fp);
  return reeb_poset(fp).reeb;
}

int cmd_approximate(const Config& c) {
  const auto input = load(c);
  json report;
  bool ok = false;
  if (const auto* g = std::get_if<MetricGraph>(&input)) {
    const auto run = run_graph(*g, c);
    auto r = make_report(run, g->vertex_count(), c.tol);
    r.phi_of_G = run.bound_graph;
    report = to_json(r);
    ok = r.ok;
    emit(c.out_tree, io::to_newick(run.tree.tree) + "\n");
    emit(c.out_dot, io::covering_graph_dot(run.poset.filtered()));
  } else if (const auto* space = std::get_if<FiniteMetricSpace>(&input)) {
    const auto result = tree_approx_metric_space(
        *space, std::nullopt, c.base, {fence_mode_from_string(c.mf_mode), {}, c.tol});
    report = to_json(result.report);
    ok = result.report.ok;
    emit(c.out_tree, io::to_newick(result.run.tree.tree) + "\n");
    emit(c.out_dot, io::covering_graph_dot(result.run.poset.filtered()));
  } else {
    const auto rp = as_reeb(std::get<FilteredPoset>(input));
    const auto tree = reeb_tree(rp.filtered());
    const auto result = approximation_bound(rp, tree, {fence_mode_from_string(c.mf_mode), {}, c.tol});
    report = to_json(result);
    ok = result.ok;
    emit(c.out_tree, io::to_newick(tree.tree) + "\n");
    emit(c.out_dot, io::covering_graph_dot(rp.filtered()));
  }
  const auto text = dump(report);
  emit(c.out_report, text);
  std::cout << text;
  if (!ok) {
    std::cerr << "error: bound inequality failed, worst pair " << report.value("worst_pair", json()).dump() << "\n";
    return kInequality;
  }
  return kOk;
}

int cmd_hyp(const Config& c) {
  const auto input = load(c);
  double value = 0.0;
  if (const auto* g = std::get_if<MetricGraph>(&input)) {
    const auto d = shortest_paths(*g);
    value = c.base ? hyp_base(d, g->index_of(*c.base)).value : hyp_four_point(d);
  } else if (const auto* space = std::get_if<FiniteMetricSpace>(&input)) {
    value = c.base ? hyp_base(space->distances(), space->index_of(*c.base)).value
                   : hyp_four_point(space->distances());
  } else {
    value = hyp_poset(as_reeb(std::get<FilteredPoset>(input))).value;
  }
  std::cout << io::format_number(value) << "\n";
  return kOk;
}

int cmd_bounds(const Config& c) {
  const auto input = load(c);
  json out;
  auto graph_part = [&](const GraphApproximation& run) {
    out["base"] = run.regularized.graph.label(*run.regularized.graph.base());
    out["betti"] = run.betti;
    out["two_beta_plus_two"] = 2 * run.betti + 2;
    out["hyp"] = round12(run.hyp);
    out["hyp_p"] = round12(run.hyp_p.value);
    out["MF"] = run.poset_result.max_fence.value;
    out["MF_mode"] = to_string(run.poset_result.max_fence.mode);
    out["bound_main"] = round12(run.bound_main);
    out["bound_graph"] = round12(run.bound_graph);
    out["bound_graph_p"] = round12(run.bound_graph_p);
  };
  if (const auto* g = std::get_if<MetricGraph>(&input)) {
    graph_part(run_graph(*g, c));
  } else if (const auto* space = std::get_if<FiniteMetricSpace>(&input)) {
    const auto result = tree_approx_metric_space(*space, std::nullopt, c.base,
                                                 {fence_mode_from_string(c.mf_mode), {}, c.tol});
    graph_part(result.run);
    out["upsilon"] = round12(*result.report.upsilon);
    out["phi_upper_bound"] = round12(*result.report.phi_upper_bound);
  } else {
    const auto rp = as_reeb(std::get<FilteredPoset>(input));
    const auto result = approximation_bound(rp, {fence_mode_from_string(c.mf_mode), {}, c.tol});
    out["hyp_f"] = round12(result.hyp.value);
    out["MF"] = result.max_fence.value;
    out["MF_mode"] = to_string(result.max_fence.mode);
    out["bound"] = round12(result.bound);
  }
  out["log_base"] = 2;
  const auto text = dump(out);
  emit(c.out_report, text);
  std::cout << text;
  return kOk;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto n = std::stoul(text);
      return {n, n};
    }
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParseError("--n-range expects N or A..B, got '" + text + "'");
  }
}

int cmd_zn(const Config& c) {
  const auto [first, last] = parse_range(c.n_range);
  if (first < 1 || last < first) throw ParseError("--n-range must satisfy 1 <= A <= B");
  const auto rows = bench::growth_comparison(first, last, c.R, c.r, {4, c.tol});
  std::cout << bench::growth_csv(rows);
  json report = json::array();
  bool ok = true;
  for (const auto& row : rows) {
    ok = ok && row.ok;
    json j = {{"n", row.n},
              {"hyp", round12(row.hyp)},
              {"upsilon", round12(row.upsilon)},
              {"phi", round12(row.phi)},
              {"distortion", round12(row.distortion)},
              {"ratio", round12(row.ratio)},
              {"lower", round12(row.lower)},
              {"phi_upper", round12(row.phi_upper)},
              {"ok", row.ok}};
    if (row.phi_complete) j["phi_complete_graph"] = round12(*row.phi_complete);
    report.push_back(j);
  }
  emit(c.out_report, dump(json{{"rows", report}, {"R", c.R}, {"r", c.r}, {"ok", ok}, {"log_base", 2}}));
  return ok ? kOk : kInequality;
}

int cmd_verify(const Config& c) {
  const auto summary = bench::run_verification(c.seed, c.count, c.size);
  const auto text = dump(summary.to_json());
  emit(c.out_report, text);
  std::cout << text;
  return summary.ok() ? kOk : kInequality;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree approximations of Reeb posets, metric graphs and finite metric spaces"};
  app.require_subcommand(1);
  Config c;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "Input file")->required();
    sub->add_option("--format", c.format, "auto|graph-json|edge-tsv|matrix-csv|matrix-json|poset-json")
        ->check(CLI::IsMember({"auto", "graph-json", "edge-tsv", "matrix-csv", "matrix-json", "poset-json"}));
    sub->add_option("--base", c.base, "Base vertex label");
    sub->add_option("--mf-mode", c.mf_mode, "exact|bound")->check(CLI::IsMember({"exact", "bound"}));
    sub->add_option("--tol", c.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out-report", c.out_report, "Write the JSON report here");
  };

  auto* approximate = app.add_subcommand("approximate", "Tree approximation with its bounds");
  with_input(approximate);
  approximate->add_option("--out-tree", c.out_tree, "Write the tree in Newick format");
  approximate->add_option("--out-dot", c.out_dot, "Write the covering graph in DOT format");

  auto* hyp = app.add_subcommand("hyp", "Gromov hyperbolicity");
  with_input(hyp);

  auto* bounds = app.add_subcommand("bounds", "Bounds on the tree approximation error");
  with_input(bounds);

  auto* zn = app.add_subcommand("zn", "Growth table for the Z_n family");
  zn->add_option("--n-range", c.n_range, "N or A..B");
  zn->add_option("--R", c.R, "Spoke length")->check(CLI::PositiveNumber);
  zn->add_option("--r", c.r, "Rim length")->check(CLI::PositiveNumber);
  zn->add_option("--tol", c.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
  zn->add_option("--out-report", c.out_report, "Write the JSON rows here");

  auto* verify = app.add_subcommand("verify", "Re-check every inequality on random instances");
  verify->add_option("--seed", c.seed, "Random seed");
  verify->add_option("--count", c.count, "Instances per kind");
  verify->add_option("--size", c.size, "Largest instance size")->check(CLI::Range(1, 12));
  verify->add_option("--out-report", c.out_report, "Write the JSON summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*approximate) return cmd_approximate(c);
    if (*hyp) return cmd_hyp(c);
    if (*bounds) return cmd_bounds(c);
    if (*zn) return cmd_zn(c);
    return cmd_verify(c);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
}

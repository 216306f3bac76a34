#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "reebforest/bench.hpp"
#include "reebforest/io.hpp"
#include "reebforest/metric_space.hpp"
#include "reebforest/report.hpp"

namespace py = pybind11;
using namespace reebforest;

namespace {

io::Input parse(const std::string& content, const std::string& format, const std::string& name) {
  auto f = io::input_format_from_string(format);
  if (f == io::InputFormat::automatic) f = io::detect_format(name, content);
  return io::parse_input(content, f);
}

ReebPoset as_reeb(const FilteredPoset& fp) {
  if (fp.is_strict()) return ReebPoset(fp);
  return reeb_poset(fp).reeb;
}

DistanceMatrix to_matrix(const std::vector<std::vector<double>>& rows) {
  DistanceMatrix d(rows.size());
  for (Index i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ParseError("distance matrix must be square");
    for (Index j = 0; j < rows.size(); ++j) d(i, j) = rows[i][j];
  }
  return d;
}

std::vector<std::vector<double>> to_rows(const DistanceMatrix& d) {
  std::vector<std::vector<double>> rows(d.size(), std::vector<double>(d.size()));
  for (Index i = 0; i < d.size(); ++i)
    for (Index j = 0; j < d.size(); ++j) rows[i][j] = d(i, j);
  return rows;
}

// Returns (report as JSON text, Newick tree, DOT covering graph).
py::tuple approximate(const std::string& content, const std::string& format, const std::string& name,
                      const std::optional<std::string>& base, const std::string& mf_mode, double tol) {
  const auto input = parse(content, format, name);
  const GraphApproximationOptions options{fence_mode_from_string(mf_mode), {}, tol};
  if (const auto* g = std::get_if<MetricGraph>(&input)) {
    const auto run = base ? tree_approx_graph(*g, g->index_of(*base), options) : tree_approx_graph(*g, options);
    auto r = make_report(run, g->vertex_count(), tol);
    r.phi_of_G = run.bound_graph;
    return py::make_tuple(to_json(r).dump(), io::to_newick(run.tree.tree),
                          io::covering_graph_dot(run.poset.filtered()));
  }
  if (const auto* space = std::get_if<FiniteMetricSpace>(&input)) {
    const auto result = tree_approx_metric_space(*space, std::nullopt, base, {options.mode, {}, tol});
    return py::make_tuple(to_json(result.report).dump(), io::to_newick(result.run.tree.tree),
                          io::covering_graph_dot(result.run.poset.filtered()));
  }
  const auto rp = as_reeb(std::get<FilteredPoset>(input));
  const auto tree = reeb_tree(rp.filtered());
  const auto result = approximation_bound(rp, tree, {options.mode, {}, tol});
  return py::make_tuple(to_json(result).dump(), io::to_newick(tree.tree), io::covering_graph_dot(rp.filtered()));
}

double hyp(const std::string& content, const std::string& format, const std::string& name,
           const std::optional<std::string>& base) {
  const auto input = parse(content, format, name);
  if (const auto* g = std::get_if<MetricGraph>(&input)) {
    const auto d = shortest_paths(*g);
    return base ? hyp_base(d, g->index_of(*base)).value : hyp_four_point(d);
  }
  if (const auto* space = std::get_if<FiniteMetricSpace>(&input))
    return base ? hyp_base(space->distances(), space->index_of(*base)).value : hyp_four_point(space->distances());
  return hyp_poset(as_reeb(std::get<FilteredPoset>(input))).value;
}

py::list zn_growth(std::size_t first, std::size_t last, double R, double r, double tol) {
  if (first < 1 || last < first) throw ParseError("n range must satisfy 1 <= first <= last");
  py::list out;
  for (const auto& row : bench::growth_comparison(first, last, R, r, {4, tol})) {
    py::dict d;
    d["n"] = row.n;
    d["hyp"] = row.hyp;
    d["upsilon"] = row.upsilon;
    d["phi"] = row.phi;
    d["distortion"] = row.distortion;
    d["ratio"] = row.ratio;
    d["lower"] = row.lower;
    d["phi_upper"] = row.phi_upper;
    d["phi_complete_graph"] = row.phi_complete ? py::cast(*row.phi_complete) : py::none();
    d["ok"] = row.ok;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_reebforest, m) {
  m.doc() = "Tree approximations of Reeb posets, metric graphs and finite metric spaces";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<InvariantError> invariant_error(m, "InvariantError", error.ptr());
  static py::exception<BudgetExceeded> budget_exceeded(m, "BudgetExceeded", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(parse_error.ptr(), e.what());
    } catch (const InvariantError& e) {
      PyErr_SetString(invariant_error.ptr(), e.what());
    } catch (const BudgetExceeded& e) {
      PyErr_SetString(budget_exceeded.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;

  m.def("approximate", &approximate, py::arg("content"), py::arg("format") = "auto", py::arg("name") = "",
        py::arg("base") = py::none(), py::arg("mf_mode") = "exact", py::arg("tol") = kDefaultTolerance);
  m.def("hyp", &hyp, py::arg("content"), py::arg("format") = "auto", py::arg("name") = "",
        py::arg("base") = py::none());
  m.def("zn_growth", &zn_growth, py::arg("first"), py::arg("last"), py::arg("R") = 1.0, py::arg("r") = 1.0,
        py::arg("tol") = kDefaultTolerance);
  m.def(
      "verify",
      [](std::uint64_t seed, std::size_t count, std::size_t size) {
        if (size < 1 || size > 12) throw ParseError("size must be in 1..12");
        return bench::run_verification(seed, count, size).to_json().dump();
      },
      py::arg("seed") = 7, py::arg("count") = 500, py::arg("size") = 10);

  m.def(
      "hyp_four_point", [](const std::vector<std::vector<double>>& d) { return hyp_four_point(to_matrix(d)); },
      py::arg("d"));
  m.def(
      "hyp_base", [](const std::vector<std::vector<double>>& d, Index p) {
        if (p >= d.size()) throw InvariantError("base index out of range");
        return hyp_base(to_matrix(d), p).value;
      },
      py::arg("d"), py::arg("p"));
  m.def(
      "gromov_bound",
      [](const std::vector<std::string>& labels, const std::vector<std::vector<double>>& d) {
        return gromov_bound_upsilon(FiniteMetricSpace(labels, to_matrix(d)));
      },
      py::arg("labels"), py::arg("d"));
  m.def(
      "shortest_paths",
      [](const std::string& content, const std::string& format, const std::string& name) {
        const auto input = parse(content, format, name);
        const auto* g = std::get_if<MetricGraph>(&input);
        if (!g) throw ParseError("expected a metric graph");
        return py::make_tuple(g->labels(), to_rows(shortest_paths(*g)));
      },
      py::arg("content"), py::arg("format") = "auto", py::arg("name") = "");
}

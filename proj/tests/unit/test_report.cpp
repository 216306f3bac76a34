#include <doctest.h>

#include "fixtures.hpp"
#include "reebforest/report.hpp"

using namespace reebforest;
using namespace fixtures;

TEST_CASE("report for the unit cycle") {
  const auto run = tree_approx_graph(unit_cycle(), 0);
  const auto r = make_report(run, 4);
  CHECK(r.base == "p");
  CHECK(r.distortion == 2);
  CHECK(r.max_fence == 2);
  CHECK(r.two_beta_plus_two == 4);
  CHECK(r.collapsed_pairs == 1);
  CHECK(r.four_point_defect == 0);
  CHECK(r.ok);
  for (const auto& [name, passed] : r.checks) {
    INFO(name);
    CHECK(passed);
  }

  const auto j = to_json(r);
  CHECK(j["log_base"] == 2);
  CHECK(j["bound"] == j["bound_main"]);
  CHECK(j["worst_pair"] == nlohmann::json::array({"a", "c"}));
  CHECK(j["hyp_is_finite_proxy"] == true);
  CHECK(j["regularization"]["added_vertices"].empty());
  CHECK(j["MF_mode"] == "exact");
}

TEST_CASE("regularization trace in the report") {
  const MetricGraph tri({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  const auto r = make_report(tree_approx_graph(tri, 0), 3);
  const auto j = to_json(r);
  REQUIRE(j["regularization"]["added_vertices"].size() == 1);
  const auto& added = j["regularization"]["added_vertices"][0];
  CHECK(added["reason"] == "apex");
  CHECK(added["offset"] == 0.5);
  CHECK(r.regularized_vertices == 4);
  CHECK(r.points == 3);
}

TEST_CASE("poset report fields") {
  const auto j = to_json(approximation_bound(ReebPoset(vee(), {0, 2, 1})));
  for (const char* key : {"distortion", "hyp_f", "MF", "MF_mode", "bound", "ok"}) CHECK(j.contains(key));
  CHECK(j["bound"] == 4.0);
}

TEST_CASE("twelve significant digits") {
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(std::signbit(round12(-0.0)) == false);
}

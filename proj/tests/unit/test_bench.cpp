#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "reebforest/bench.hpp"
#include "reebforest/io.hpp"

using namespace reebforest;
using namespace fixtures;

TEST_CASE("Z_1 is the unit 4-cycle") {
  const auto z = bench::make_zn(1, 1, 1);
  CHECK(z.graph.vertex_count() == 4);
  CHECK(z.graph.betti() == 1);
  CHECK(shortest_paths(z.graph) == shortest_paths(MetricGraph(
                                       {"p", "x0", "x1", "y1"}, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}})));
}

TEST_CASE("Z_n counts and fence") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto z = bench::make_zn(n, 2, 1);
    CHECK(z.graph.vertex_count() == 2 * n + 2);
    CHECK(z.graph.edge_count() == 3 * n + 1);
    CHECK(z.graph.betti() == static_cast<long>(n));
    CHECK(z.fence_labels.size() == 2 * n + 1);
    const auto check = bench::verify_lower_bound_argument(z, z.graph);
    CHECK(check.fence_found);
    CHECK(check.fence_length == 2 * n);
    CHECK(check.ok);
  }
  const auto z2 = bench::make_zn(2, 1, 1);
  CHECK(z2.fence_labels == std::vector<std::string>{"x0", "y1", "x1", "y2", "x2"});
  CHECK_THROWS_AS(bench::make_zn(0, 1, 1), Error);
  CHECK_THROWS_AS(bench::make_zn(2, 1, 2), Error);
}

TEST_CASE("the fence survives in the complete-graph embedding") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto z = bench::make_zn(n, 1, 1);
    const auto check = bench::verify_lower_bound_argument(z, complete_graph_embedding(bench::zn_metric(z)));
    CHECK(check.fence_found);
    CHECK(check.betti >= static_cast<long>(n) - 1);
    CHECK(check.ok);
  }
  const auto z = bench::make_zn(2, 1, 1);
  CHECK_THROWS_AS(bench::verify_lower_bound_argument(z, unit_cycle()), InvariantError);
}

TEST_CASE("growth table") {
  const auto rows = bench::growth_comparison(1, 4, 1, 1);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].hyp == 1);
  CHECK(rows[0].upsilon == 6);
  CHECK(rows[0].phi == 6);
  for (const auto& row : rows) {
    CHECK(row.ratio == doctest::Approx(1).epsilon(1e-12));
    CHECK(row.ok);
    REQUIRE(row.phi_complete);
    CHECK(row.lower <= row.phi_upper + 1e-9);
  }
  const auto csv = bench::growth_csv(rows);
  CHECK(csv.rfind("n,hyp,upsilon,phi,distortion,ratio\n1,1,6,6,2,1\n", 0) == 0);

  const auto uneven = bench::growth_comparison(2, 3, 3, 1);
  for (const auto& row : uneven) CHECK(row.ok);
}

TEST_CASE("random streams are deterministic and valid") {
  bench::RandomInstances a(bench::InstanceKind::poset, 12, 99), b(bench::InstanceKind::poset, 12, 99);
  for (int i = 0; i < 50; ++i) {
    const auto x = std::get<ReebPoset>(a.next());
    const auto y = std::get<ReebPoset>(b.next());
    CHECK(x.poset() == y.poset());
    CHECK(x.f() == y.f());
    CHECK(x.filtered().is_strict());
  }
  bench::RandomInstances g(bench::InstanceKind::graph, 10, 5), h(bench::InstanceKind::graph, 10, 5);
  for (int i = 0; i < 50; ++i)
    CHECK(io::to_json(std::get<MetricGraph>(g.next())) == io::to_json(std::get<MetricGraph>(h.next())));
  bench::RandomInstances m(bench::InstanceKind::metric, 8, 1);
  for (int i = 0; i < 50; ++i) CHECK_NOTHROW(std::get<FiniteMetricSpace>(m.next()));

  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto fp = bench::random_filtered_poset(rng, 1 + i % 12, false);
    for (Index x = 0; x < fp.size(); ++x)
      for (Index y = 0; y < fp.size(); ++y)
        if (fp.poset().leq(x, y)) CHECK(fp.f(x) <= fp.f(y));
  }
  CHECK(bench::instance_kind_from_string("metric") == bench::InstanceKind::metric);
  CHECK_THROWS_AS(bench::instance_kind_from_string("tree"), Error);
}

TEST_CASE("verification harness") {
  const auto summary = bench::run_verification(7, 40, 10);
  CHECK(summary.ok());
  CHECK(summary.instances == 40);
  for (const auto& [name, suite] : summary.suites) {
    INFO(name << ": " << suite.first_failure);
    CHECK(suite.failures == 0);
    CHECK(suite.checked > 0);
  }
  CHECK(summary.to_json().dump() == bench::run_verification(7, 40, 10).to_json().dump());
}

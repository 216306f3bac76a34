#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "reebforest/bench.hpp"
#include "reebforest/oracles.hpp"

using namespace reebforest;
using namespace fixtures;

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(MetricGraph({"a", "a"}, {{0, 1, 1}}), InvariantError);
  CHECK(message_of([] { MetricGraph({"a", "b"}, {{0, 0, 1}}); }).find("loop") != std::string::npos);
  CHECK(message_of([] { MetricGraph({"a", "b"}, {{0, 1, 1}, {1, 0, 2}}); }).find("multiple") != std::string::npos);
  CHECK_THROWS_AS(MetricGraph({"a", "b"}, {{0, 1, -1}}), InvariantError);
  CHECK_THROWS_AS(MetricGraph({"a", "b"}, {{0, 1, 0}}), InvariantError);
  CHECK(message_of([] { MetricGraph({"a", "b", "c"}, {{0, 1, 1}}); }) == "graph is not connected");
}

TEST_CASE("shortest paths") {
  CHECK(shortest_paths(MetricGraph({"a", "b"}, {{0, 1, 3}}))(0, 1) == 3);
  const auto d = shortest_paths(unit_cycle());
  CHECK(d(0, 2) == 2);
  CHECK(d(1, 3) == 2);
  const MetricGraph tri({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 3}});
  CHECK(shortest_paths(tri)(0, 2) == 2);
  CHECK(distances_from(tri, 0, Index{0})[1] == 4);
  CHECK(unit_cycle().betti() == 1);
}

TEST_CASE("regularizing the unit cycle changes nothing") {
  const auto r = regularize(unit_cycle(), 0);
  CHECK(r.trace.added.empty());
  CHECK(r.graph.vertex_count() == 4);
  CHECK_FALSE(p_regularity_violation(unit_cycle(), 0));
}

TEST_CASE("apex on the far edge of a triangle") {
  const MetricGraph tri({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CHECK(p_regularity_violation(tri, 0).has_value());
  const auto r = regularize(tri, 0);
  REQUIRE(r.trace.added.size() == 1);
  const auto& apex = r.trace.added[0];
  CHECK(apex.reason == SubdivisionReason::apex);
  CHECK(apex.offset == 0.5);
  CHECK(apex.vertex == 3);
  CHECK(r.graph.label(3) == "apex(b,c)");
  CHECK_FALSE(p_regularity_violation(r.graph, 0));
  CHECK(shortest_paths(r.graph)(0, 3) == 1.5);
}

TEST_CASE("midpoint when an edge is not the only geodesic") {
  const MetricGraph g({"a", "b", "c"}, {{0, 1, 2}, {0, 2, 1}, {2, 1, 1}});
  const auto r = regularize(g, 0);
  REQUIRE(r.trace.added.size() == 1);
  CHECK(r.trace.added[0].reason == SubdivisionReason::midpoint);
  CHECK(r.trace.added[0].offset == 1);
  CHECK(r.graph.label(3) == "mid(a,b)");
  CHECK_FALSE(p_regularity_violation(r.graph, 0));
  for (const auto& e : r.graph.edges()) CHECK(oracle::geodesic_count(r.graph, e.u, e.v, 1e-9) == 1);
}

TEST_CASE("regularization is idempotent and isometric on random graphs") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 150; ++i) {
    const auto g = bench::random_metric_graph(rng, 2 + i % 8);
    const auto d = shortest_paths(g);
    for (Index p = 0; p < g.vertex_count(); ++p) {
      const auto r = regularize(g, p);
      CHECK(regularize(r.graph, p).trace.added.empty());
      CHECK_FALSE(p_regularity_violation(r.graph, p));
      const auto d2 = shortest_paths(r.graph);
      for (Index x = 0; x < g.vertex_count(); ++x)
        for (Index y = 0; y < g.vertex_count(); ++y) CHECK(d2(x, y) == d(x, y));
      // The covering graph of <=_p is the graph, weight for weight.
      const auto rp = induce_poset(r.graph, p);
      CHECK(rp.poset().cover_count() == r.graph.edge_count());
      for (const auto& e : r.graph.edges()) {
        CHECK(rp.poset().comparable(e.u, e.v));
        CHECK(std::abs(rp.f(e.u) - rp.f(e.v)) == doctest::Approx(e.length).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("induced posets") {
  const auto c = induce_poset(unit_cycle(), 0);
  CHECK(c.poset() == c4());
  CHECK(c.f() == std::vector<double>{0, 1, 2, 1});

  const MetricGraph star({"p", "u", "v", "w"}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  const auto s = induce_poset(star, 0);
  CHECK(s.poset().smallest() == Index{0});
  CHECK_FALSE(s.poset().comparable(1, 2));

  const MetricGraph path({"p", "v", "w"}, {{0, 1, 1}, {1, 2, 1}});
  const auto pv = induce_poset(path, 0);
  CHECK(pv.poset().less(0, 1));
  CHECK(pv.poset().less(1, 2));

  const MetricGraph tri({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CHECK(message_of([&] { induce_poset(tri, 0); }).find("not p-regular") != std::string::npos);
  CHECK_THROWS_AS(regularize(tri, 7), InvariantError);
}

TEST_CASE("unit cycle pipeline") {
  const auto run = tree_approx_graph(unit_cycle(), 0);
  CHECK(run.distortion == 2);
  CHECK(run.betti == 1);
  CHECK(run.hyp == 1);
  CHECK(run.hyp_p.value == 1);
  CHECK(run.bound_graph == 6);
  CHECK(run.bound_main == 4);
  CHECK(((run.worst_x == 1 && run.worst_y == 3) || (run.worst_x == 3 && run.worst_y == 1)));
  CHECK(run.ok);
}

TEST_CASE("tree graphs are reproduced exactly") {
  const MetricGraph t({"r", "a", "b", "c"}, {{0, 1, 2}, {0, 2, 1}, {2, 3, 3}});
  for (Index p = 0; p < 4; ++p) {
    const auto run = tree_approx_graph(t, p);
    CHECK(run.distortion == 0);
    CHECK(run.bound_graph == 0);
    CHECK(run.ok);
  }
  CHECK(graph_bound(0, 0) == 0);
  CHECK(graph_bound(1, 1) == 6);
}

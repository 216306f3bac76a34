#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "reebforest/bench.hpp"
#include "reebforest/oracles.hpp"

using namespace reebforest;
using namespace fixtures;

TEST_CASE("closure and reduction") {
  const auto v = vee();
  CHECK(v.less(0, 1));
  CHECK(v.less(2, 1));
  CHECK_FALSE(v.comparable(0, 2));
  CHECK(v.covered_by(1) == std::vector<Index>{0, 2});

  const auto c = poset(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(c.cover_pairs() == std::vector<OrderPair>{{0, 1}, {1, 2}});
  CHECK(c.cover_count() == 2);
  CHECK(c.less(0, 2));
}

TEST_CASE("rejected relations") {
  CHECK(message_of([] { poset(2, {{0, 1}, {1, 0}}); }).find("not a partial order") != std::string::npos);
  CHECK(message_of([] { poset(3, {{0, 1}}); }) == "poset not connected");
  CHECK_THROWS_AS(poset(2, {{0, 0}}), InvariantError);
  CHECK_THROWS_AS(poset(2, {{0, 5}}), InvariantError);
  CHECK_THROWS_AS(Poset::from_relation(2, {1, 1, 1, 1}), InvariantError);
}

TEST_CASE("relation round trip") {
  const auto c = c4();
  std::vector<std::uint8_t> leq;
  for (Index x = 0; x < 4; ++x)
    for (Index y = 0; y < 4; ++y) leq.push_back(c.leq(x, y));
  const auto again = Poset::from_relation(4, leq);
  CHECK(again == c);
  CHECK(poset(4, again.cover_pairs()) == c);
}

TEST_CASE("merging points and trees") {
  CHECK(merging_points(vee()) == std::vector<Index>{1});
  CHECK(merging_points(chain(3)).empty());
  CHECK(merging_points(c4()) == std::vector<Index>{2});

  CHECK(is_tree(chain(3)));
  CHECK_FALSE(is_tree(vee()));
  const auto wedge = poset(3, {{1, 0}, {1, 2}});
  CHECK(is_tree(wedge));
  CHECK(wedge.smallest() == Index{1});
  CHECK_FALSE(vee().smallest());
  CHECK(is_tree(poset(1, {})));
}

TEST_CASE("covering graph") {
  CHECK(covering_graph(chain(3)).edges == std::vector<OrderPair>{{0, 1}, {1, 2}});
  CHECK(covering_graph(vee()).edges == std::vector<OrderPair>{{0, 1}, {2, 1}});
  const auto g = covering_graph(c4());
  CHECK(g.edges.size() == 4);
  CHECK_FALSE(g.is_undirected_forest());
  // Without a smallest element, an acyclic covering graph does not make a tree.
  CHECK(covering_graph(vee()).is_undirected_forest());
}

TEST_CASE("betti number of the covering graph") {
  CHECK(betti_covering(chain(4)).value == 0);
  const auto b = betti_covering(c4());
  CHECK(b.value == 1);
  REQUIRE(b.iota_sum);
  CHECK(*b.iota_sum == 1);
  CHECK_FALSE(betti_covering(vee()).iota_sum);
  CHECK(betti_covering(poset(1, {})).value == 0);
}

TEST_CASE("fences") {
  const auto c = c4();
  const std::vector<Index> acb{1, 2, 3};
  CHECK(is_fence(c, acb));
  const std::vector<Index> pab{0, 1, 2};
  CHECK_FALSE(is_fence(c, pab));  // p < b
  const std::vector<Index> repeated{1, 2, 1};
  CHECK_FALSE(is_fence(c, repeated));

  Fence length2{{1, 2, 3}};
  CHECK(count_merging_lower_bound(length2, c) == 0);
  CHECK_THROWS_AS(count_merging_lower_bound(Fence{{0, 1, 2}}, c), InvariantError);
}

TEST_CASE("fence of length five forces two merging points") {
  // x0 < y1 > x1 < y2 > x2 < y3
  const auto z = poset(6, {{0, 1}, {2, 1}, {2, 3}, {4, 3}, {4, 5}});
  Fence fence{{0, 1, 2, 3, 4, 5}};
  CHECK(fence.length() == 5);
  CHECK(count_merging_lower_bound(fence, z) == 2);
  CHECK(merging_points(z).size() >= 2);
}

TEST_CASE("maximal fence length") {
  for (std::size_t n = 2; n <= 6; ++n) CHECK(max_fence_length(chain(n), FenceMode::exact).value == 1);
  CHECK(max_fence_length(poset(1, {}), FenceMode::exact).value == 0);

  const auto exact = max_fence_length(c4(), FenceMode::exact);
  CHECK(exact.value == 2);
  REQUIRE(exact.witness);
  CHECK(is_fence(c4(), exact.witness->elements));
  CHECK(max_fence_length(c4(), FenceMode::bound).value == 4);

  CHECK(message_of([] { max_fence_length(vee(), FenceMode::bound); }).find("bound unavailable") == 0);
  FenceSearchOptions adjoin;
  adjoin.adjoin_virtual_bottom = true;
  // a and c gain a common lower bound, so the covering graph closes one cycle.
  CHECK(max_fence_length(vee(), FenceMode::bound, adjoin).value == 4);

  FenceSearchOptions tiny;
  tiny.max_nodes = 1;
  CHECK_THROWS_AS(max_fence_length(c4(), FenceMode::exact, tiny), BudgetExceeded);
}

TEST_CASE("Z_2 poset") {
  const auto z = bench::make_zn(2, 1, 1);
  const auto rp = induce_poset(z.graph, 0);
  CHECK(merging_points(rp.poset()).size() == 2);
  CHECK(max_fence_length(rp.poset(), FenceMode::exact).value >= 4);
  CHECK(betti_covering(rp.poset()).value == 2);
}

TEST_CASE("exact fence search agrees with subset enumeration") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto p = bench::random_poset(rng, 1 + i % 9);
    const auto exact = max_fence_length(p, FenceMode::exact);
    CHECK(exact.value == oracle::max_fence_length(p));
    if (auto b = p.smallest()) CHECK(exact.value <= max_fence_length(p, FenceMode::bound).value);
  }
}

TEST_CASE("virtual bottom") {
  const auto p = vee().with_virtual_bottom();
  CHECK(p.size() == 4);
  CHECK(p.smallest() == Index{3});
  CHECK(p.label(3) == "_bottom");
}

TEST_CASE("fence mode names") {
  CHECK(fence_mode_from_string("exact") == FenceMode::exact);
  CHECK(std::string(to_string(FenceMode::bound)) == "bound");
  CHECK_THROWS_AS(fence_mode_from_string("fast"), ParseError);
}

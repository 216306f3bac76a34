#include <doctest.h>

#include "fixtures.hpp"
#include "reebforest/metric.hpp"

using namespace reebforest;
using namespace fixtures;

namespace {

ReebPoset vee_reeb() { return ReebPoset(vee(), {0, 2, 1}); }
ReebPoset c4_reeb() { return ReebPoset(c4(), {0, 1, 2, 1}); }

}  // namespace

TEST_CASE("filtrations are validated") {
  CHECK_THROWS_AS(FilteredPoset(vee(), {2, 0, 1}), InvariantError);
  CHECK_THROWS_AS(FilteredPoset(vee(), {0, 1}), InvariantError);
  CHECK_THROWS_AS(ReebPoset(chain(2), {1, 1}), InvariantError);
  CHECK(FilteredPoset(chain(2), {1, 1}).is_strict() == false);
  CHECK(FilteredPoset(chain(2), {1, 2}).is_strict());
}

TEST_CASE("vee: metric, merge values, products") {
  const auto rp = vee_reeb();
  const auto d = induced_metric(rp.filtered());
  CHECK(d(0, 2) == 3);
  CHECK(d(0, 1) == 2);
  CHECK(d(1, 1) == 0);
  const auto m = merge_values(rp.filtered());
  CHECK(m(0, 2) == 0);
  CHECK(m(1, 1) == 2);
  CHECK(m(2, 1) == 1);
  const auto g = gromov_products(rp);
  CHECK(g(0, 2) == -1);
  CHECK(g(0, 1) == 0);
  CHECK(g(2, 2) == 1);
  CHECK(hyp_poset(rp).value == 1);
}

TEST_CASE("vee: tree straightens into a chain") {
  const auto t = reeb_tree(vee_reeb().filtered());
  CHECK(t.projection.target_size() == 3);
  const auto& tree = t.tree;
  CHECK(tree.poset().less(t.projection(0), t.projection(2)));
  CHECK(tree.poset().less(t.projection(2), t.projection(1)));
  const auto tm = tree_metric(tree);
  CHECK(tm(t.projection(0), t.projection(2)) == 1);
}

TEST_CASE("vee: approximation bound") {
  const auto r = approximation_bound(vee_reeb());
  CHECK(r.distortion == 2);
  CHECK(r.max_fence.value == 2);
  CHECK(r.hyp.value == 1);
  CHECK(r.bound == 4);
  CHECK(r.identity_residual == 0);
  CHECK(r.ok);
}

TEST_CASE("C4 poset") {
  const auto rp = c4_reeb();
  CHECK(hyp_poset(rp).value == 1);
  const auto t = reeb_tree(rp.filtered());
  CHECK(t.projection.target_size() == 3);
  CHECK(t.projection(1) == t.projection(3));
  const auto pulled = pull_back(tree_metric(t.tree), t.projection);
  CHECK(pulled(1, 3) == 0);
  const auto r = approximation_bound(rp);
  CHECK(r.distortion == 2);
  CHECK(r.bound == 4);
  CHECK(r.ok);
}

TEST_CASE("R_f collapses f-constant components") {
  const auto r = reeb_poset(FilteredPoset(chain(3), {0, 0, 1}));
  CHECK(r.reeb.size() == 2);
  CHECK(r.projection(0) == r.projection(1));
  CHECK(r.reeb.poset().less(r.projection(0), r.projection(2)));

  const auto v = reeb_poset(FilteredPoset(vee(), {0, 1, 1}));
  CHECK(v.reeb.size() == 2);
  CHECK(v.projection(1) == v.projection(2));
  CHECK(v.reeb.poset().label(v.projection(1)) == "b|c");

  const auto id = reeb_poset(vee_reeb().filtered());
  CHECK(id.reeb.size() == 3);
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 3; ++y) CHECK(id.reeb.poset().leq(id.projection(x), id.projection(y)) == vee().leq(x, y));
}

TEST_CASE("T_f of a tree is the tree") {
  const auto rp = ReebPoset(chain(4), {0, 1, 3, 4});
  const auto t = reeb_tree(rp.filtered());
  CHECK(t.projection.target_size() == 4);
  for (Index x = 0; x < 4; ++x) CHECK(t.tree.f(t.projection(x)) == rp.f(x));
  CHECK(approximation_bound(rp).distortion == 0);
  CHECK(approximation_bound(rp).bound == 0);
}

TEST_CASE("comparable pairs: distance is the f gap, product is the lower value") {
  const auto rp = c4_reeb();
  const auto d = induced_metric(rp.filtered());
  const auto g = gromov_products(rp);
  for (Index x = 0; x < 4; ++x)
    for (Index y = 0; y < 4; ++y)
      if (rp.poset().leq(x, y)) {
        CHECK(d(x, y) == rp.f(y) - rp.f(x));
        CHECK(g(x, y) == rp.f(x));
      } else if (!rp.poset().comparable(x, y)) {
        CHECK(d(x, y) > std::abs(rp.f(x) - rp.f(y)));
      }
}

TEST_CASE("ReebTree validation") {
  const ReebTree t({std::nullopt, Index{0}, Index{0}}, {0, 1, 2}, {"r", "u", "v"});
  CHECK(t.root() == 0);
  CHECK(t.meet(1, 2) == 0);
  CHECK(t.depth(2) == 1);
  CHECK_THROWS_AS(ReebTree({std::nullopt, std::nullopt}, {0, 1}), InvariantError);
  CHECK_THROWS_AS(ReebTree({std::nullopt, Index{0}}, {1, 0}), InvariantError);
}

TEST_CASE("bound conventions") {
  CHECK(main_bound(2, 0) == 0);
  CHECK(main_bound(0, 1) == 0);
  CHECK(main_bound(2, 1) == 4);
  CHECK(main_bound(4, 0.5) == doctest::Approx(3));
}

TEST_CASE("single element") {
  const auto rp = ReebPoset(poset(1, {}), {5});
  const auto r = approximation_bound(rp);
  CHECK(r.distortion == 0);
  CHECK(r.bound == 0);
  CHECK(r.ok);
}

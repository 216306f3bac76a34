#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "reebforest/bench.hpp"
#include "reebforest/io.hpp"

using namespace reebforest;
using namespace fixtures;

TEST_CASE("edge list") {
  const auto g = io::graph_from_tsv("# comment\np\ta\t1\na\tb\t1\n\nb\tc\t1\nc\tp\t1\n");
  CHECK(g.vertex_count() == 4);
  CHECK(g.labels() == std::vector<std::string>{"p", "a", "b", "c"});
  CHECK(g.betti() == 1);

  try {
    io::graph_from_tsv("p\ta\t1\na\tb\tx\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(io::graph_from_tsv("p\ta\n"), ParseError);
  CHECK_THROWS_AS(io::graph_from_tsv(""), ParseError);
}

TEST_CASE("distance matrix csv") {
  const auto m = io::metric_from_csv(",p,a\np,0,2\na,2,0\n");
  CHECK(m.labels() == std::vector<std::string>{"p", "a"});
  CHECK(m(0, 1) == 2);
  const auto plain = io::metric_from_csv("p,a\n0,2\n2,0\n");
  CHECK(plain(1, 0) == 2);
  CHECK(io::metric_from_csv(io::to_csv(m)).distances() == m.distances());
  try {
    io::metric_from_csv("p,a\n0,2\n2,zz\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 2);
  }
  CHECK_THROWS_AS(io::metric_from_csv("p,a\n0,2\n"), ParseError);
  CHECK_THROWS_AS(io::metric_from_csv("x,y,z\n0,1,5\n1,0,1\n5,1,0\n"), InvariantError);
}

TEST_CASE("json documents") {
  const auto g = io::graph_from_json(io::parse_json(R"({"vertices":["p","a"],"edges":[["p","a",2]],"base":"a"})"));
  CHECK(g.base() == Index{1});
  CHECK(io::graph_from_json(io::to_json(g)).edges()[0].length == 2);

  const auto fp = io::filtered_poset_from_json(
      io::parse_json(R"({"n":3,"covers":[[0,1],[2,1]],"labels":["a","b","c"],"f":[0,2,1]})"));
  CHECK(fp.poset() == vee());
  CHECK(io::filtered_poset_from_json(io::to_json(fp)).f() == fp.f());

  const auto m = io::metric_from_json(io::parse_json(R"({"labels":["x","y"],"d":[[0,1],[1,0]]})"));
  CHECK(m(0, 1) == 1);

  try {
    io::parse_json("{\n  \"n\": 3,\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(io::poset_from_json(io::parse_json(R"({"n":2,"covers":[[0]]})")), ParseError);
  CHECK_THROWS_AS(io::graph_from_json(io::parse_json(R"({"vertices":["a"],"edges":[["a","b",1]]})")), ParseError);
}

TEST_CASE("format detection") {
  CHECK(io::detect_format("g.tsv", "") == io::InputFormat::edge_tsv);
  CHECK(io::detect_format("m.csv", "") == io::InputFormat::matrix_csv);
  CHECK(io::detect_format("x.json", R"({"edges":[]})") == io::InputFormat::graph_json);
  CHECK(io::detect_format("x.json", R"({"d":[]})") == io::InputFormat::matrix_json);
  CHECK(io::detect_format("x.json", R"({"covers":[]})") == io::InputFormat::poset_json);
  CHECK(io::detect_format("noext", "a\tb\t1\n") == io::InputFormat::edge_tsv);
  CHECK(io::detect_format("noext", "a,b\n0,1\n1,0\n") == io::InputFormat::matrix_csv);
  CHECK(io::input_format_from_string("edge-tsv") == io::InputFormat::edge_tsv);
  CHECK_THROWS_AS(io::input_format_from_string("xml"), ParseError);
}

TEST_CASE("numbers use twelve significant digits") {
  CHECK(io::format_number(2) == "2");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(-0.0) == "0");
}

TEST_CASE("newick parsing") {
  const auto root = io::parse_newick("((a:1,'b c':2)x:0.5,[note]d:3)r;");
  CHECK(root.label == "r");
  REQUIRE(root.children.size() == 2);
  CHECK(root.children[0].children[1].label == "b c");
  const auto nd = io::newick_distances(root);
  CHECK(nd.d(nd.index.at("a"), nd.index.at("d")) == 4.5);
  CHECK(nd.d(nd.index.at("a"), nd.index.at("b c")) == 3);
  try {
    io::parse_newick("(a:1,b:2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() > 0);
  }
  CHECK_THROWS_AS(io::newick_distances(io::parse_newick("(a,a)r;")), ParseError);
}

TEST_CASE("newick round trip reproduces the tree metric") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto rp = bench::random_reeb_poset(rng, 1 + i % 12);
    const auto t = reeb_tree(rp.filtered());
    const auto tm = tree_metric(t.tree);
    const auto nd = io::newick_distances(io::parse_newick(io::to_newick(t.tree)));
    REQUIRE(nd.index.size() == t.tree.size());
    for (Index x = 0; x < t.tree.size(); ++x)
      for (Index y = 0; y < t.tree.size(); ++y)
        CHECK(std::abs(nd.d(nd.index.at(t.tree.poset().label(x)), nd.index.at(t.tree.poset().label(y))) -
                       tm(x, y)) <= 1e-9);
  }
}

TEST_CASE("dot output") {
  const auto dot = io::covering_graph_dot(FilteredPoset(c4(), {0, 1, 2, 1}));
  CHECK(dot.find("digraph \"covering\"") == 0);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(dot.find("rank=same") != std::string::npos);
  const auto t = reeb_tree(FilteredPoset(c4(), {0, 1, 2, 1}));
  CHECK(io::tree_dot(t.tree).find("digraph \"reeb_tree\"") == 0);
}

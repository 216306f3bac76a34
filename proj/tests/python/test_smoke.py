import os
import pathlib

import pytest

import reebforest

DATA = pathlib.Path(os.environ.get("REEBFOREST_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))

SQUARE = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]


def test_unit_cycle():
    report = reebforest.approximate(DATA / "cycle4.tsv", base="p")
    assert report["distortion"] == 2.0
    assert report["bound_graph"] == 6.0
    assert report["ok"]


def test_vee_poset():
    report = reebforest.approximate(DATA / "vee.json")
    assert report["distortion"] == 2.0
    assert report["bound"] == 4.0


def test_tree_has_zero_hyperbolicity():
    assert reebforest.hyp(DATA / "tree.tsv") == 0.0
    report = reebforest.approximate(DATA / "tree.tsv")
    assert report["distortion"] == 0.0


def test_metric_matrix():
    report = reebforest.approximate(DATA / "square.csv")
    assert report["upsilon"] == 6.0
    assert report["ok"]
    assert reebforest.hyp_four_point(SQUARE) == 1.0
    assert reebforest.hyp_base(SQUARE, 0) == 1.0
    assert reebforest.gromov_bound(["p", "a", "b", "c"], SQUARE) == 6.0


def test_text_input_returns_tree_and_dot():
    report, newick, dot = reebforest.approximate_text("p\ta\t1\na\tb\t1\nb\tc\t1\nc\tp\t1\n", format="edge-tsv")
    assert report["ok"]
    assert newick.endswith(";")
    assert dot.startswith('digraph "covering"')


def test_shortest_paths():
    labels, d = reebforest.shortest_paths(DATA / "cycle4.tsv")
    assert labels == ["p", "a", "b", "c"]
    assert d == SQUARE


def test_zn_growth_ratio():
    rows = reebforest.zn_growth(1, 4)
    assert [row["n"] for row in rows] == [1, 2, 3, 4]
    for row in rows:
        assert row["ok"]
        assert row["ratio"] == pytest.approx(1.0, abs=1e-9)


def test_verify():
    summary = reebforest.verify(seed=3, count=30, size=8)
    assert summary["ok"]
    assert summary["instances"] == 30


def test_errors():
    with pytest.raises(reebforest.InvariantError, match="triangle inequality"):
        reebforest.approximate(DATA / "triangle_violation.csv")
    with pytest.raises(reebforest.ParseError, match="line 2, column 3"):
        reebforest.approximate(DATA / "bad_edges.tsv")
    assert issubclass(reebforest.ParseError, reebforest.Error)
    assert issubclass(reebforest.Error, ValueError)

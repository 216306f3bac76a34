"""Tree approximations of Reeb posets, metric graphs and finite metric spaces."""

import json
import os

from . import _reebforest as _core
from ._reebforest import (
    DEFAULT_TOLERANCE,
    BudgetExceeded,
    Error,
    InvariantError,
    ParseError,
    gromov_bound,
    hyp_base,
    hyp_four_point,
    zn_growth,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "BudgetExceeded",
    "Error",
    "InvariantError",
    "ParseError",
    "approximate",
    "approximate_text",
    "gromov_bound",
    "hyp",
    "hyp_base",
    "hyp_four_point",
    "shortest_paths",
    "verify",
    "zn_growth",
]


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def approximate_text(content, format="auto", name="", base=None, mf_mode="exact", tol=DEFAULT_TOLERANCE):
    """Approximate an in-memory document. Returns (report, newick, dot)."""
    report, newick, dot = _core.approximate(content, format, name, base, mf_mode, tol)
    return json.loads(report), newick, dot


def approximate(path, format="auto", base=None, mf_mode="exact", tol=DEFAULT_TOLERANCE):
    """Report dict for a graph, distance matrix or poset file."""
    return approximate_text(_read(path), format, os.fspath(path), base, mf_mode, tol)[0]


def hyp(path, format="auto", base=None):
    return _core.hyp(_read(path), format, os.fspath(path), base)


def shortest_paths(path, format="auto"):
    """(labels, matrix) of a metric graph file."""
    return _core.shortest_paths(_read(path), format, os.fspath(path))


def verify(seed=7, count=500, size=10):
    return json.loads(_core.verify(seed, count, size))

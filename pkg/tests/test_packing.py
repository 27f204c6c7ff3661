import logging
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given

from tests.settings import STANDARD_SETTINGS
from tests.utils import all_graphs, book, graph, graphs, to_networkx
from turanbench.config import configure
from turanbench.errors import InvalidArgument
from turanbench.graph import Graph, list_triangles
from turanbench.packing import (
    greedy_independent_set,
    independence_number,
    max_edge_disjoint_triangles,
    maximum_independent_set,
)


def _brute_force_packing(triangles, used=frozenset(), start=0) -> int:
    best = 0
    for i in range(start, len(triangles)):
        edges = set(triangles[i].edges)
        if edges & used:
            continue
        best = max(
            best, 1 + _brute_force_packing(triangles, used | edges, i + 1)
        )
    return best


def _is_edge_disjoint(packing) -> bool:
    edges = [e for t in packing.triangles for e in t.edges]
    return len(edges) == len(set(edges))


@pytest.mark.parametrize(
    "g,expected",
    [
        (Graph.complete(3), 1),
        (Graph.complete(4), 1),
        (Graph.complete(5), 2),
        # The Fano plane decomposes K7.
        (Graph.complete(7), 7),
        (book(3), 1),
        (graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]), 2),
        (Graph.empty(4), 0),
    ],
)
def test_known_packings(g, expected):
    packing = max_edge_disjoint_triangles(g)
    assert len(packing) == expected
    assert packing.exact
    assert _is_edge_disjoint(packing)


@pytest.mark.parametrize("n", range(3, 7))
def test_exact_matches_brute_force(n):
    for g in all_graphs(n):
        packing = max_edge_disjoint_triangles(g, mode="exact")
        assert _is_edge_disjoint(packing)
        assert len(packing) == _brute_force_packing(list_triangles(g))


@STANDARD_SETTINGS
@given(graphs(max_n=8))
def test_greedy_is_maximal(g):
    packing = max_edge_disjoint_triangles(g, mode="greedy")
    assert not packing.exact
    assert _is_edge_disjoint(packing)
    used = {e for t in packing.triangles for e in t.edges}
    # No remaining triangle fits.
    for t in list_triangles(g):
        assert t in packing.triangles or set(t.edges) & used
    exact = max_edge_disjoint_triangles(g, mode="exact")
    assert len(packing) <= len(exact)


@STANDARD_SETTINGS
@given(graphs(max_n=12))
def test_independence_number_matches_networkx(g):
    complement = nx.complement(to_networkx(g))
    expected = max((len(c) for c in nx.find_cliques(complement)), default=0)
    assert independence_number(list(g.adj)) == expected

    chosen = maximum_independent_set(list(g.adj))
    assert chosen == sorted(chosen)
    assert not any(g.has_edge(u, v) for u in chosen for v in chosen)


@STANDARD_SETTINGS
@given(graphs(max_n=12))
def test_greedy_meets_caro_wei(g):
    chosen = greedy_independent_set(list(g.adj))
    assert not any(g.has_edge(u, v) for u in chosen for v in chosen)
    assert len(chosen) >= sum(Fraction(1, d + 1) for d in g.degrees())


def test_as_dict():
    data = max_edge_disjoint_triangles(Graph.complete(4)).as_dict()
    assert data == {"size": 1, "exact": True, "triangles": [[0, 1, 2]]}


def test_unknown_mode():
    with pytest.raises(InvalidArgument):
        max_edge_disjoint_triangles(Graph.complete(4), mode="fast")


def test_falls_back_to_greedy(caplog):
    configure(exact_packing_limit=3)
    with caplog.at_level(logging.WARNING, logger="turanbench.packing"):
        packing = max_edge_disjoint_triangles(Graph.complete(4))
    assert not packing.exact
    assert "exceed the exact packing limit" in caplog.text

    assert max_edge_disjoint_triangles(Graph.complete(3)).exact

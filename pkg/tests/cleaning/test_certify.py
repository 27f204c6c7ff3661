import json

import pytest

from tests.utils import book, cycle, free_graphs, graph, wheel
from turanbench.cleaning.certify import (
    Certificate,
    TraceEntry,
    _Reducer,
    _start,
    certify_books,
    certify_half,
    certify_unit,
    replay_certificate,
)
from turanbench.errors import (
    Counterexample,
    InvalidArgument,
    PreconditionViolation,
)
from turanbench.graph import Graph
from turanbench.graph6 import encode_graph6

BOWTIE = graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def _check(g: Graph, cert: Certificate):
    assert cert.holds
    assert cert.graph6 == encode_graph6(g)
    assert replay_certificate(g, cert)
    restored = Certificate.from_dict(json.loads(json.dumps(cert.to_dict())))
    assert restored == cert
    assert replay_certificate(g, restored)


def test_certify_half_book():
    g = book(3)
    cert = certify_half(g)
    assert (cert.kind, cert.law, cert.t, cert.e) == (
        "light-pair-deletion",
        "half",
        3,
        7,
    )
    assert [entry.rule for entry in cert.trace] == [
        "light-pair",
        "light-pair",
        "light-pair",
        "no-triangle",
    ]
    assert cert.trace[0].edges == [(0, 2), (1, 2)]
    assert all(entry.delta_t == 1 for entry in cert.trace[:3])
    assert cert.terminal["t"] == 0
    assert cert.conclusion == "t = 3 <= e/2 = 7/2"
    _check(g, cert)


def test_certify_half_drops_uncovered_edges_first():
    g = graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5)])
    cert = certify_half(g)
    assert cert.trace[0].rule == "no-triangle"
    assert cert.trace[0].edges == [(2, 3), (3, 4), (4, 5)]
    _check(g, cert)


@pytest.mark.parametrize(
    "g,pattern",
    [
        (Graph.complete(4), "k4"),
        (wheel(4), "k122"),
        (Graph.complete(6), "suspension:path:4"),
    ],
)
def test_certify_half_preconditions(g, pattern):
    with pytest.raises(PreconditionViolation) as exc:
        certify_half(g)
    assert exc.value.pattern == pattern


@pytest.mark.parametrize("n", range(1, 8))
def test_certify_half_every_small_graph(n):
    for g in free_graphs(n, ["p4hat", "k4", "k122"]):
        _check(g, certify_half(g))


@pytest.mark.slow
def test_certify_half_every_graph_on_eight_vertices():
    for g in free_graphs(8, ["p4hat", "k4", "k122"]):
        _check(g, certify_half(g))


def test_certify_books():
    cert = certify_books(book(2))
    assert cert.kind == "book-decomposition"
    assert [(e.rule, e.delta_t, e.delta_e, e.case) for e in cert.trace] == [
        ("book", 2, 5, "book:2")
    ]
    assert cert.terminal == {"blocks": 1, "uncovered": 0}
    _check(book(2), cert)

    g = graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5)])
    cert = certify_books(g)
    assert [e.rule for e in cert.trace] == ["book", "book", "uncovered"]
    _check(g, cert)


def test_certify_books_preconditions():
    with pytest.raises(PreconditionViolation) as exc:
        certify_books(Graph.complete(4))
    assert exc.value.pattern == "k4"
    with pytest.raises(PreconditionViolation):
        certify_books(wheel(5))


@pytest.mark.parametrize("n", range(1, 8))
def test_certify_books_every_small_graph(n):
    for g in free_graphs(n, ["p3hat", "k4"]):
        _check(g, certify_books(g))


def _reducer(g: Graph) -> _Reducer:
    return _Reducer(g, _start(g, "p5-reduction", "unit"))


def test_certify_unit_drops_low_codegree_first():
    # The rim edges of a 5-wheel lie in one triangle each.
    g = wheel(5)
    cert = certify_unit(g)
    assert (cert.kind, cert.law) == ("p5-reduction", "unit")
    assert (cert.t, cert.e) == (5, 10)
    assert [(e.rule, e.source, e.delta_t, e.delta_e) for e in cert.trace] == [
        ("low-codegree", "rule", 5, 5)
    ]
    assert cert.deviations == []
    _check(g, cert)


def test_certify_unit_k5_with_pendant_triangle():
    g = graph(6, Graph.complete(5).edges() + [(0, 5), (1, 5)])
    cert = certify_unit(g)
    assert [(e.rule, e.delta_t, e.delta_e) for e in cert.trace] == [
        ("low-codegree", 1, 2),
        ("k5", 10, 10),
    ]
    assert cert.deviations == []
    _check(g, cert)


def test_settle_uses_own_set():
    entry = _reducer(Graph.complete(5)).settle(
        "k5", None, Graph.complete(5).edges(), tuple(range(5)), "block"
    )
    assert (entry.source, entry.delta_t, entry.delta_e) == ("printed", 10, 10)


def test_settle_rejects_a_broken_own_set():
    with pytest.raises(Counterexample) as exc:
        _reducer(Graph.complete(5)).settle(
            "k5minus", None, [(0, 1)], tuple(range(5)), "plain"
        )
    assert exc.value.stage == "certify_unit:k5minus"
    assert "removes 3 triangles with 1 edges" in exc.value.detail


def test_settle_closure_retry():
    reducer = _reducer(Graph.complete(5))
    entry = reducer.settle(
        "k6-3-1", None, [(0, 1)], tuple(range(5)), "plain"
    )
    assert (entry.source, entry.delta_t, entry.delta_e) == ("closure", 10, 10)
    assert len(reducer.cert.deviations) == 1
    assert reducer.cert.deviations[0].startswith("k6-3-1 (plain): ")
    assert reducer.cert.unexpected_deviations == []

    with pytest.raises(Counterexample) as exc:
        _reducer(Graph.complete(5)).settle(
            "k6-2-2", None, [(0, 1)], (0, 1, 2), "plain"
        )
    assert "closure removes 7 triangles with 3 edges" in exc.value.detail


def test_settle_rejects_excluded_cases():
    with pytest.raises(Counterexample) as exc:
        _reducer(Graph.complete(5)).settle(
            "k6-3-2", None, None, tuple(range(5)), "no-x", impossible=True
        )
    assert exc.value.stage == "certify_unit:k6-3-2"
    assert "excluded case 'no-x'" in exc.value.detail

    g = graph(5, [e for e in Graph.complete(5).edges() if e != (0, 1)])
    with pytest.raises(Counterexample) as exc:
        _reducer(g).settle("w5", None, [(0, 1)], (), "spokes")
    assert "non-edges [(0, 1)]" in exc.value.detail


def test_unexpected_deviations():
    cert = certify_unit(Graph.complete(5))
    cert.deviations = [
        "k6-3-1 (plain): own set removes 10 triangles with 9 edges",
        "k122 (spokes): own set removes 5 triangles with 4 edges",
    ]
    assert cert.unexpected_deviations == [cert.deviations[1]]


def test_certify_unit_k5():
    cert = certify_unit(Graph.complete(5))
    assert [(e.rule, e.delta_t, e.delta_e) for e in cert.trace] == [
        ("k5", 10, 10)
    ]
    assert cert.conclusion == "t = 10 <= e = 10"
    _check(Graph.complete(5), cert)


def test_certify_unit_low_codegree():
    cert = certify_unit(book(3))
    assert cert.trace[0].rule == "low-codegree"
    assert (cert.trace[0].delta_t, cert.trace[0].delta_e) == (3, 6)
    assert cert.terminal == {"t": 0, "e": 1}
    _check(book(3), cert)


def test_certify_unit_triangle_free():
    cert = certify_unit(cycle(5))
    assert cert.trace == []
    _check(cycle(5), cert)


def test_certify_unit_preconditions():
    with pytest.raises(PreconditionViolation) as exc:
        certify_unit(Graph.complete(6))
    assert exc.value.pattern == "k6minus"


def _certify_unit_all(n: int):
    for g in free_graphs(n, ["k6minus", "p5hat"]):
        cert = certify_unit(g)
        assert all(e.delta_t <= e.delta_e for e in cert.trace)
        assert cert.unexpected_deviations == [], cert.graph6
        _check(g, cert)


@pytest.mark.parametrize("n", range(1, 7))
def test_certify_unit_every_small_graph(n):
    _certify_unit_all(n)


@pytest.mark.slow
def test_certify_unit_every_graph_on_seven_vertices():
    _certify_unit_all(7)


@pytest.mark.slow
def test_certify_unit_every_graph_on_eight_vertices():
    _certify_unit_all(8)


def test_replay_detects_tampering():
    g = book(3)
    cert = certify_half(g)
    cert.trace[0].delta_t = 0
    with pytest.raises(Counterexample) as exc:
        replay_certificate(g, cert)
    assert exc.value.stage == "replay:light-pair-deletion"

    cert = certify_half(g)
    cert.t = 4
    with pytest.raises(Counterexample):
        replay_certificate(g, cert)


def test_replay_detects_broken_law():
    g = Graph.complete(3)
    # One triangle for one edge reproduces, but only the unit law allows it.
    entry = TraceEntry("manual", [(0, 1)], 1, 1)
    cert = Certificate(
        kind="manual",
        law="half",
        graph6=encode_graph6(g),
        n=3,
        t=1,
        e=3,
        trace=[entry],
    )
    with pytest.raises(Counterexample) as exc:
        replay_certificate(g, cert)
    assert "breaks the half law" in exc.value.detail

    cert.law = "unit"
    assert replay_certificate(g, cert)


def test_replay_rejects_other_graphs():
    cert = certify_half(book(3))
    with pytest.raises(InvalidArgument):
        replay_certificate(book(2), cert)
    cert.law = "double"
    with pytest.raises(InvalidArgument):
        replay_certificate(book(3), cert)


def test_certificate_as_dict():
    data = certify_books(BOWTIE).to_dict()
    assert data["holds"] is True
    assert data["conclusion"] == "t = 2 <= e/2 = 6/2"
    assert data["trace"][0] == {
        "rule": "book",
        "edges": [[0, 1], [0, 2], [1, 2]],
        "delta_t": 1,
        "delta_e": 3,
        "witness": None,
        "source": "rule",
        "case": "book:1",
    }

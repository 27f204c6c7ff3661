import pytest

from turanbench.constructions import build_fnk, build_hn
from turanbench.errors import InvalidArgument, PreconditionViolation
from turanbench.graph import Graph, triangle_count
from turanbench.graph6 import decode_graph6
from turanbench.patterns import catalog_get, is_free
from turanbench.search.extremal import exact_extremal
from turanbench.search.local import local_search_lower_bound


def _check(record, forbidden):
    witness = decode_graph6(record.witness)
    assert witness.n == record.n
    assert triangle_count(witness) == record.value
    assert is_free(witness, [catalog_get(name) for name in forbidden])


def test_triangle_free_has_no_triangles():
    record = local_search_lower_bound(6, ["k3"], budget=4)
    assert record.value == 0
    assert record.method == "local-search"
    _check(record, ["k3"])


def test_edges_of_triangle_free():
    record = local_search_lower_bound(
        6, ["k3"], budget=4, objective="edges"
    )
    witness = decode_graph6(record.witness)
    assert witness.edge_count == record.value
    assert 5 <= record.value <= 9
    assert triangle_count(witness) == 0


@pytest.mark.parametrize("n,forbidden", [(5, "p3hat"), (6, "p3hat")])
def test_never_beats_exact(n, forbidden):
    exact = exact_extremal(n, [forbidden])
    record = local_search_lower_bound(n, [forbidden], budget=8, seed=1)
    assert record.value <= exact.value
    _check(record, [forbidden])


@pytest.mark.parametrize(
    "start,forbidden",
    [(build_hn(8), "k122"), (build_fnk(8, 5), "p5hat")],
)
def test_start_is_a_floor(start, forbidden):
    record = local_search_lower_bound(8, [forbidden], budget=2, start=start)
    assert record.value >= 16
    _check(record, [forbidden])


def test_same_seed_same_record():
    first = local_search_lower_bound(7, ["k4", "p3hat"], budget=6, seed=7)
    second = local_search_lower_bound(7, ["k4", "p3hat"], budget=6, seed=7)
    assert first.to_dict() == second.to_dict()
    assert (first.seed, first.budget) == (7, 6)


def test_seed_defaults_to_settings():
    record = local_search_lower_bound(4, ["k4"], budget=0)
    assert record.seed == 0x5EED
    # K4 minus an edge.
    assert record.value == 2


def test_start_must_be_free():
    with pytest.raises(PreconditionViolation) as exc:
        local_search_lower_bound(5, ["k4"], start=Graph.complete(5))
    assert exc.value.pattern == "k4"


@pytest.mark.parametrize(
    "kwargs,argument",
    [
        ({"start": Graph.complete(3)}, "start"),
        ({"budget": -1}, "budget"),
        ({"objective": "vertices"}, "objective"),
    ],
)
def test_rejects_bad_arguments(kwargs, argument):
    with pytest.raises(InvalidArgument) as exc:
        local_search_lower_bound(5, ["k4"], **kwargs)
    assert exc.value.argument == argument


def test_rejects_too_many_vertices():
    with pytest.raises(InvalidArgument):
        local_search_lower_bound(65, ["k4"])

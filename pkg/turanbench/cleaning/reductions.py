"""
Guarded reductions for graphs free of K6 minus an edge and of the suspended
5-path.

Each reduction looks at one embedded configuration, checks the side
conditions around it (usually whether some outside vertex closes extra
triangles) and proposes the edge set to delete. Witness vertices are named
``a, b, c, ...`` in the pattern's vertex order; outside vertices are ``x``,
``y`` and ``z``.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from turanbench.graph import Edge, Graph
from turanbench.patterns import Pattern
from turanbench.util import lowest_bit, mask_of

__all__ = ("Proposal", "CLOSURE_RETRY", "REDUCTIONS", "REDUCTION_ORDER")


@dataclass
class Proposal:
    #: The configuration's own deletion set, or None when no case applies.
    printed: Optional[List[Edge]]
    #: Configuration vertices, outside vertices included.
    vertices: Tuple[int, ...]
    #: Which case of the reduction matched.
    case: str
    #: The side conditions land in a case the analysis rules out.
    impossible: bool = False


def _edges(spec: str, where: Dict[str, int]) -> List[Edge]:
    result = set()
    for pair in spec.split():
        u, v = where[pair[0]], where[pair[1]]
        result.add((u, v) if u < v else (v, u))
    return sorted(result)


def _outside(g: Graph, witness: Iterable[int], *around: int) -> Optional[int]:
    """
    Smallest vertex outside the witness adjacent to all of `around`.
    """
    common = (1 << g.n) - 1
    for v in around:
        common &= g.adj[v]
    common &= ~mask_of(witness)
    return lowest_bit(common) if common else None


def _named(witness) -> Dict[str, int]:
    return dict(zip("abcdef", witness))


def _whole(g: Graph, p: Pattern, witness) -> Proposal:
    return Proposal(p.image_edges(witness), tuple(witness), "block")


def _spokes(g: Graph, p: Pattern, witness) -> Proposal:
    return Proposal(p.image_edges(witness, "spokes"), tuple(witness), "spokes")


def _k6_2_2(g: Graph, p: Pattern, witness) -> Proposal:
    # ab and cd are missing.
    w = _named(witness)
    x = _outside(g, witness, w["a"], w["b"], w["c"], w["d"])
    if x is not None:
        w["x"] = x
        return Proposal(
            _edges("ea ec eb ed fc fa fd fb xa xc xb xd ac bd", w),
            tuple(witness) + (x,),
            "adx-closes",
        )
    return Proposal(
        _edges("ea ec eb ed fc fa fd fb ad bc", w), tuple(witness), "plain"
    )


def _k6_3_1(g: Graph, p: Pattern, witness) -> Proposal:
    # ab, bc and cd are missing.
    w = _named(witness)
    x = _outside(g, witness, w["a"], w["d"])
    if x is not None:
        w["x"] = x
        return Proposal(
            _edges("ea ec eb ed fc fa fd fb ac bd ad xa xd", w),
            tuple(witness) + (x,),
            "adx",
        )
    return Proposal(
        _edges("ea ec eb ed fc fa fd fb ad", w), tuple(witness), "plain"
    )


def _k6_3_2(g: Graph, p: Pattern, witness) -> Proposal:
    # ab, cd and de are missing.
    w = _named(witness)
    x = _outside(g, witness, w["a"], w["b"], w["d"])
    # bd and ad have codegree at least two, which leaves a common x.
    if x is None:
        return Proposal(None, tuple(witness), "no-x", impossible=True)
    w["x"] = x
    vertices = tuple(witness) + (x,)
    if g.has_edge(x, w["c"]):
        return Proposal(
            _edges("cb cx ca cf ce fe fb fd fa be bx bd ad ax ae", w),
            vertices,
            "x-sees-c",
        )
    if g.has_edge(x, w["e"]):
        return Proposal(
            _edges("eb ex ea ef ec fc fb fd fa bc bx bd ad ax ac", w),
            vertices,
            "x-sees-e",
        )
    return Proposal(None, vertices, "x-sees-neither", impossible=True)


def _k5minus(g: Graph, p: Pattern, witness) -> Proposal:
    # ab is missing.
    w = _named(witness)
    x = _outside(g, witness, w["c"], w["d"], w["e"])
    if x is not None:
        w["x"] = x
        return Proposal(
            _edges("xc xd xe", w), tuple(witness) + (x,), "cdx-sees-e"
        )
    return Proposal(
        _edges("ac ad ae bc bd be cd", w), tuple(witness), "plain"
    )


def _w5plus(g: Graph, p: Pattern, witness) -> Proposal:
    # Center x, rim abcde, chord ac.
    w = dict(zip("xabcde", witness))
    both = _outside(g, witness, w["a"], w["e"], w["c"], w["d"])
    y = both if both is not None else _outside(g, witness, w["a"], w["e"])
    z = both if both is not None else _outside(g, witness, w["c"], w["d"])
    # ae and cd have codegree at least two.
    if y is None or z is None:
        return Proposal(None, tuple(witness), "no-outside", impossible=True)
    w["y"], w["z"] = y, z
    vertices = tuple(witness) + tuple(sorted({y, z}))
    if y == z and g.has_edge(y, w["b"]):
        return Proposal(
            _edges("xa xb xc xd xe ya yb yc yd ye cb ca cd ab ae", w),
            vertices,
            "y-is-z-sees-b",
        )
    if y == z:
        return Proposal(_edges("xa xb xc xd xe ab bc", w), vertices, "y-is-z")
    return Proposal(
        _edges("cz cd cx cb ay ae ax ab ac by bz", w), vertices, "y-not-z"
    )


#: Reductions in the order they are tried.
REDUCTION_ORDER = [
    "k6-2-1",
    "k6-2-2",
    "k6-3-1",
    "k6-3-2",
    "k5",
    "k5minus",
    "w5plus",
    "w5",
    "k122",
]

#: Cases whose own deletion set removes more triangles than edges. They may
#: fall back to every edge induced on the configuration.
CLOSURE_RETRY = frozenset(
    {
        ("k6-2-2", "plain"),
        ("k6-2-2", "adx-closes"),
        ("k6-3-1", "plain"),
    }
)

REDUCTIONS: Dict[str, Callable[[Graph, Pattern, Tuple[int, ...]], Proposal]] = {
    "k6-2-1": _whole,
    "k6-2-2": _k6_2_2,
    "k6-3-1": _k6_3_1,
    "k6-3-2": _k6_3_2,
    "k5": _whole,
    "k5minus": _k5minus,
    "w5plus": _w5plus,
    "w5": _spokes,
    "k122": _spokes,
}

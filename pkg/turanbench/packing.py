"""
Independent sets and edge-disjoint triangle packings.

A set of triangles is edge-disjoint exactly when it is independent in the
triangle-share graph, so the packing solver is a maximum independent set
solver run on that graph.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from turanbench.config import get_settings
from turanbench.errors import InvalidArgument
from turanbench.graph import Graph, Triangle
from turanbench.structure import triangle_share_graph
from turanbench.util import iter_bits, lowest_bit, popcount

__all__ = (
    "Packing",
    "greedy_independent_set",
    "independence_number",
    "maximum_independent_set",
    "max_edge_disjoint_triangles",
)

log = logging.getLogger(__name__)


def greedy_independent_set(adj: Sequence[int]) -> List[int]:
    """
    Minimum-degree greedy independent set over adjacency bitsets.

    Repeatedly takes the remaining vertex of smallest remaining degree
    (smallest index on ties) and discards its neighbors. The result has at
    least sum 1/(d(v) + 1) vertices.
    """
    remaining = (1 << len(adj)) - 1
    chosen = []
    while remaining:
        v = min(
            iter_bits(remaining),
            key=lambda u: (popcount(adj[u] & remaining), u),
        )
        chosen.append(v)
        remaining &= ~adj[v] & ~(1 << v)
    return chosen


def _clique_cover_bound(adj: Sequence[int], candidates: int) -> int:
    # Each greedy clique holds at most one vertex of an independent set.
    cliques = 0
    while candidates:
        v = lowest_bit(candidates)
        candidates &= ~(1 << v)
        pool = adj[v] & candidates
        while pool:
            w = lowest_bit(pool)
            candidates &= ~(1 << w)
            pool &= adj[w] & ~(1 << w)
        cliques += 1
    return cliques


def maximum_independent_set(adj: Sequence[int]) -> List[int]:
    """
    Exact maximum independent set by branch and bound.

    Vertices of degree at most one among the candidates are taken without
    branching. Otherwise the solver branches on a candidate of largest
    degree, bounding each node by a greedy clique cover.
    """
    best = greedy_independent_set(adj)

    def expand(candidates: int, chosen: List[int]):
        nonlocal best
        forced = []
        while True:
            low = [
                v for v in iter_bits(candidates)
                if popcount(adj[v] & candidates) <= 1
            ]
            if not low:
                break
            v = low[0]
            forced.append(v)
            candidates &= ~adj[v] & ~(1 << v)
        chosen = chosen + forced

        if not candidates:
            if len(chosen) > len(best):
                best = chosen
            return
        if len(chosen) + _clique_cover_bound(adj, candidates) <= len(best):
            return

        v = max(
            iter_bits(candidates),
            key=lambda u: (popcount(adj[u] & candidates), -u),
        )
        expand(candidates & ~adj[v] & ~(1 << v), chosen + [v])
        expand(candidates & ~(1 << v), chosen)

    expand((1 << len(adj)) - 1, [])
    return sorted(best)


def independence_number(adj: Sequence[int]) -> int:
    return len(maximum_independent_set(adj))


@dataclass
class Packing:
    #: The packed triangles, in lexicographic order.
    triangles: List[Triangle]
    #: False when the greedy fallback produced the packing.
    exact: bool

    def __len__(self):
        return len(self.triangles)

    def as_dict(self) -> dict:
        return {
            "size": len(self.triangles),
            "exact": self.exact,
            "triangles": [list(t) for t in self.triangles],
        }


def max_edge_disjoint_triangles(
    g: Graph, *, mode: Optional[str] = None
) -> Packing:
    """
    Packs edge-disjoint triangles of `g`.

    :param mode: ``"exact"`` for a maximum packing, ``"greedy"`` for a
                 maximal one, or None to solve exactly unless the triangle
                 count exceeds the configured limit.
    """
    if mode not in (None, "exact", "greedy"):
        raise InvalidArgument(f"unknown packing mode {mode!r}", argument="mode")

    share = triangle_share_graph(g)
    if mode is None:
        limit = get_settings().exact_packing_limit
        mode = "exact" if share.n <= limit else "greedy"
        if mode == "greedy":
            log.warning(
                "%d triangles exceed the exact packing limit of %d, packing"
                " greedily",
                share.n,
                limit,
            )

    if mode == "exact":
        picked = maximum_independent_set(share.adj)
    else:
        picked = sorted(greedy_independent_set(share.adj))
    log.debug("packed %d of %d triangles (%s)", len(picked), share.n, mode)
    return Packing(
        triangles=[share.triangles[i] for i in picked],
        exact=mode == "exact",
    )

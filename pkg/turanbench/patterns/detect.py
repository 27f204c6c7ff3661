"""
Subgraph containment for small patterns.

Containment is the ordinary (not induced) subgraph relation. The search maps
pattern vertices in their catalog order and scans candidates from the
smallest host vertex up, so the first embedding found is the
lexicographically smallest one. Candidates are filtered with neighbor
bitsets and a degree floor, and host vertices that are twins of an already
refuted candidate are skipped.
"""

import logging
from dataclasses import dataclass, field
from functools import cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from turanbench.errors import InvalidArgument
from turanbench.graph import Edge, Graph, induced_edge_count, triangle_count
from turanbench.util import iter_bits, popcount

__all__ = (
    "Pattern",
    "find_embedding",
    "contains_subgraph",
    "contains_suspension",
    "is_free",
    "find_free_violation",
)

log = logging.getLogger(__name__)

Embedding = Tuple[int, ...]


@dataclass(frozen=True)
class Pattern:
    """
    A named small graph.

    Suspensions keep a reference to their inner pattern; vertex 0 of their
    realization is the apex and vertex ``i + 1`` is inner vertex ``i``.
    """

    #: Catalog name, such as ``"q32"`` or ``"suspension:path:4"``.
    name: str
    #: The canonical realization.
    realization: Graph
    #: The suspended pattern, for suspensions.
    inner: Optional["Pattern"] = None
    #: Named vertex tuples and edge tuples used by the cleaning rules.
    roles: Mapping[str, tuple] = field(
        default_factory=dict, compare=False, hash=False
    )

    def __repr__(self):
        return f"Pattern({self.name!r})"

    @property
    def n(self) -> int:
        return self.realization.n

    @property
    def edge_count(self) -> int:
        return self.realization.edge_count

    @property
    def triangle_count(self) -> int:
        return triangle_count(self.realization)

    @property
    def has_isolated_vertices(self) -> bool:
        return any(row == 0 for row in self.realization.adj)

    def image_edges(
        self, witness: Sequence[int], role: Optional[str] = None
    ) -> List[Edge]:
        """
        Maps the pattern's edges (or the edges of `role`) through `witness`,
        returning sorted host edges.
        """
        edges = self.roles[role] if role else self.realization.edges()
        result = []
        for u, v in edges:
            x, y = witness[u], witness[v]
            result.append((x, y) if x < y else (y, x))
        return sorted(result)


@dataclass(frozen=True)
class _Plan:
    k: int
    #: For each position, the earlier positions it must be adjacent to.
    back: Tuple[Tuple[int, ...], ...]
    #: Pattern degree of each position.
    need: Tuple[int, ...]


@cache
def _plan(h: Graph) -> _Plan:
    back = tuple(
        tuple(j for j in range(i) if h.adj[i] >> j & 1) for i in range(h.n)
    )
    return _Plan(k=h.n, back=back, need=tuple(h.degrees()))


def _find_generic(
    g: Graph, h: Graph, anchor: Optional[int], universe: int
) -> Optional[Embedding]:
    plan = _plan(h)
    k = plan.k
    if k == 0:
        return ()
    if popcount(universe) < k:
        return None
    if anchor is not None and not universe >> anchor & 1:
        return None
    if induced_edge_count(g, universe) < h.edge_count:
        return None

    adj: Dict[int, int] = {v: g.adj[v] & universe for v in iter_bits(universe)}
    max_need = max(plan.need)
    deg_ok = [0] * (max_need + 1)
    for v, row in adj.items():
        d = min(popcount(row), max_need)
        for i in range(d + 1):
            deg_ok[i] |= 1 << v

    image = [0] * k
    anchor_bit = 0 if anchor is None else 1 << anchor

    def twins(u: int, w: int) -> bool:
        return adj[u] & ~(1 << w) == adj[w] & ~(1 << u)

    def extend(i: int, used: int, forced: Optional[int]) -> bool:
        if i == k:
            return True
        candidates = deg_ok[plan.need[i]] & ~used
        for j in plan.back[i]:
            candidates &= adj[image[j]]
        if forced is not None:
            if i == forced:
                candidates &= anchor_bit
            else:
                candidates &= ~anchor_bit
        tried = []
        for v in iter_bits(candidates):
            if v != anchor and any(twins(u, v) for u in tried):
                continue
            image[i] = v
            if extend(i + 1, used | 1 << v, forced):
                return True
            if v != anchor:
                tried.append(v)
        return False

    if anchor is None:
        if extend(0, 0, None):
            return tuple(image)
        return None

    for position in range(k):
        if extend(0, 0, position):
            return tuple(image)
    return None


def _find_suspension(
    g: Graph, inner: Graph, anchor: Optional[int], universe: int
) -> Optional[Embedding]:
    k = inner.n
    for v in iter_bits(universe):
        link = g.adj[v] & universe
        if popcount(link) < k:
            continue
        if anchor is None or v == anchor:
            found = _find_generic(g, inner, None, link)
        elif link >> anchor & 1:
            found = _find_generic(g, inner, anchor, link)
        else:
            continue
        if found is not None:
            return (v,) + found
    return None


def find_embedding(
    g: Graph,
    p: Pattern,
    *,
    anchor: Optional[int] = None,
    within: Optional[int] = None,
    generic: bool = False,
) -> Optional[Embedding]:
    """
    Finds an injective map from the vertices of `p` into `g` that preserves
    every edge of `p`.

    Without `anchor`, the result is the lexicographically smallest such map,
    read in the pattern's vertex order. Suspensions are searched through the
    neighborhood of each candidate apex unless `generic` is set.

    :param anchor: When given, only embeddings whose image contains this
                   vertex are considered.
    :param within: A bitset restricting the image.
    :param generic: Disable the suspension shortcut.
    :return: The image of each pattern vertex, or None.
    """
    universe = (1 << g.n) - 1 if within is None else within & ((1 << g.n) - 1)
    if p.inner is not None and not generic:
        return _find_suspension(g, p.inner.realization, anchor, universe)
    return _find_generic(g, p.realization, anchor, universe)


def contains_subgraph(
    g: Graph,
    p: Pattern,
    *,
    anchor: Optional[int] = None,
    generic: bool = False,
) -> bool:
    """
    True iff `g` has a (not necessarily induced) subgraph isomorphic to `p`.
    """
    return find_embedding(g, p, anchor=anchor, generic=generic) is not None


def contains_suspension(g: Graph, inner: Pattern) -> bool:
    """
    True iff some vertex of `g` has `inner` inside its neighborhood.
    """
    if inner.has_isolated_vertices:
        raise InvalidArgument(
            f"{inner.name} has isolated vertices", argument="inner"
        )
    universe = (1 << g.n) - 1
    return _find_suspension(g, inner.realization, None, universe) is not None


def _ordered(forbidden: Iterable[Pattern]) -> List[Pattern]:
    if isinstance(forbidden, (set, frozenset)):
        return sorted(forbidden, key=lambda p: p.name)
    return list(forbidden)


def find_free_violation(
    g: Graph, forbidden: Iterable[Pattern], *, anchor: Optional[int] = None
) -> Optional[Tuple[Pattern, Embedding]]:
    """
    Returns the first forbidden pattern contained in `g`, with its witness.

    Sets are checked in name order, sequences in their given order.
    """
    for p in _ordered(forbidden):
        witness = find_embedding(g, p, anchor=anchor)
        if witness is not None:
            return p, witness
    return None


def is_free(g: Graph, forbidden: Iterable[Pattern]) -> bool:
    """
    True iff `g` contains none of the `forbidden` patterns.
    """
    return find_free_violation(g, forbidden) is None

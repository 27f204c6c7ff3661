"""
Canonical labelling for small graphs.

Individualization-refinement in the usual style: an equitable partition is
refined, the first non-singleton cell is split on each of its vertices in
turn, and the leaves of that search tree are discrete orderings. The
canonical code is the largest upper-triangle bit string over all leaves.

Twins in a cell are explored only once, and equal leaf codes yield
automorphisms that prune vertices in the same orbit (among automorphisms
that fix the current prefix pointwise).
"""

from functools import lru_cache
from typing import List, Sequence, Tuple

from turanbench.graph import Graph
from turanbench.graph6 import encode_graph6
from turanbench.util import iter_bits, popcount

__all__ = ("canonical_form", "canonical_code", "canonical_graph6")

Partition = List[List[int]]


def _refine(adj: Sequence[int], cells: Partition) -> Partition:
    """
    Splits cells by neighbor counts into every other cell until the partition
    is equitable. Sub-cells are ordered by ascending count.
    """
    cells = [list(cell) for cell in cells]
    changed = True
    while changed:
        changed = False
        for splitter in range(len(cells)):
            mask = 0
            for v in cells[splitter]:
                mask |= 1 << v
            refined: Partition = []
            for cell in cells:
                if len(cell) == 1:
                    refined.append(cell)
                    continue
                groups = {}
                for v in cell:
                    groups.setdefault(popcount(adj[v] & mask), []).append(v)
                if len(groups) == 1:
                    refined.append(cell)
                    continue
                changed = True
                for count in sorted(groups):
                    refined.append(groups[count])
            cells = refined
            if changed:
                break
    return cells


def _code(adj: Sequence[int], order: Sequence[int]) -> int:
    """
    Packs the relabelled upper triangle into an int, row by row.
    """
    code = 0
    n = len(order)
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = code << 1 | (row >> order[j] & 1)
    return code


def _individualize(cells: Partition, at: int, v: int) -> Partition:
    rest = [u for u in cells[at] if u != v]
    return cells[:at] + [[v], rest] + cells[at + 1:]


def _search(adj: Sequence[int], n: int) -> Tuple[int, Tuple[int, ...]]:
    best_code = -1
    best_order: Tuple[int, ...] = tuple(range(n))
    leaves = {}
    automorphisms: List[Tuple[int, ...]] = []

    def twins(u: int, w: int) -> bool:
        return adj[u] & ~(1 << w) == adj[w] & ~(1 << u)

    def visit(cells: Partition, prefix: Tuple[int, ...]):
        nonlocal best_code, best_order
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = tuple(c[0] for c in cells)
            code = _code(adj, order)
            if code in leaves:
                # Two leaves with equal codes differ by an automorphism.
                other = leaves[code]
                perm = [0] * n
                for a, b in zip(other, order):
                    perm[a] = b
                automorphisms.append(tuple(perm))
            else:
                leaves[code] = order
            if code > best_code:
                best_code, best_order = code, order
            return

        explored: List[int] = []
        for v in cells[target]:
            if any(twins(u, v) for u in explored):
                continue
            if explored and _in_orbit(v, explored, prefix, automorphisms):
                continue
            visit(_individualize(cells, target, v), prefix + (v,))
            explored.append(v)

    visit([list(range(n))], ())
    return best_code, best_order


def _in_orbit(
    v: int,
    explored: Sequence[int],
    prefix: Sequence[int],
    automorphisms: Sequence[Tuple[int, ...]],
) -> bool:
    usable = [
        perm for perm in automorphisms if all(perm[p] == p for p in prefix)
    ]
    if not usable:
        return False
    orbit = set(explored)
    frontier = list(explored)
    while frontier:
        u = frontier.pop()
        for perm in usable:
            w = perm[u]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return v in orbit


@lru_cache(maxsize=1 << 16)
def _cached(n: int, adj: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    return _search(adj, n)


def canonical_code(g: Graph) -> int:
    """
    An integer equal for two graphs on the same vertex count iff they are
    isomorphic.
    """
    return _cached(g.n, g.adj)[0]


def canonical_order(g: Graph) -> Tuple[int, ...]:
    """
    ``order[i]`` is the vertex placed at position ``i`` of the canonical
    labelling.
    """
    return _cached(g.n, g.adj)[1]


def canonical_form(g: Graph) -> Graph:
    """
    Returns the canonical relabelling of `g`.
    """
    order = canonical_order(g)
    position = {v: i for i, v in enumerate(order)}
    adj = [0] * g.n
    for v in range(g.n):
        for w in iter_bits(g.adj[v]):
            adj[position[v]] |= 1 << position[w]
    return Graph._trusted(g.n, adj)


def canonical_graph6(g: Graph) -> str:
    return encode_graph6(canonical_form(g))

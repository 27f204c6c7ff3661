"""
Isomorph-free generation of small graphs.

Graphs on ``n`` vertices are built from graphs on ``n - 1`` vertices by
adding a vertex of minimum degree. A child is kept only when its canonically
chosen minimum-degree vertex leads back to the parent's isomorphism class,
so every class has exactly one parent class; isomorphic siblings of the
same parent are merged by canonical code. The generation of one parent never
looks at another, which is what lets the last level be split across worker
processes.

An optional `accept` filter prunes children as they are made. It must be
closed under vertex deletion (any class of graphs defined by forbidden
subgraphs is), or whole subtrees go missing.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from turanbench.config import get_settings
from turanbench.errors import Counterexample, InvalidArgument
from turanbench.graph import Graph, delete_vertex
from turanbench.patterns import catalog_get, find_free_violation
from turanbench.search.canonical import (
    canonical_code,
    canonical_form,
    canonical_order,
)
from turanbench.util import grouper_it

__all__ = (
    "ENUMERATION_HARD_CAP",
    "KNOWN_COUNTS",
    "FreeOf",
    "augment",
    "enumerate_graphs",
    "count_graphs",
)

log = logging.getLogger(__name__)

#: Exhaustive generation is refused beyond this many vertices.
ENUMERATION_HARD_CAP = 11

#: Number of isomorphism classes of graphs on n vertices.
KNOWN_COUNTS = {
    0: 1,
    1: 1,
    2: 2,
    3: 4,
    4: 11,
    5: 34,
    6: 156,
    7: 1044,
    8: 12346,
    9: 274668,
    10: 12005168,
    11: 1018997864,
}

Accept = Callable[[Graph, int], bool]


class FreeOf:
    """
    Child filter keeping graphs free of the named patterns.

    Only copies through the new vertex are searched for, since the parent
    is already free. Picklable, so it can travel to worker processes.
    """

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)

    def __call__(self, g: Graph, new: int) -> bool:
        patterns = [catalog_get(name) for name in self.names]
        return find_free_violation(g, patterns, anchor=new) is None

    def __repr__(self):
        return f"FreeOf({list(self.names)!r})"


def _check_n(n: int):
    cap = min(get_settings().enumeration_cap, ENUMERATION_HARD_CAP)
    if not 0 <= n <= cap:
        raise InvalidArgument(
            f"exhaustive generation needs 0 <= n <= {cap}, got {n}",
            argument="n",
        )


def _keeps(child: Graph, parent_code: int) -> bool:
    new = child.n - 1
    degrees = child.degrees()
    low = min(degrees)
    candidates = [v for v, d in enumerate(degrees) if d == low]
    if candidates == [new]:
        return True
    order = canonical_order(child)
    position = {v: i for i, v in enumerate(order)}
    chosen = min(candidates, key=position.__getitem__)
    if chosen == new:
        return True
    return canonical_code(delete_vertex(child, chosen)) == parent_code


def augment(parent: Graph, accept: Optional[Accept] = None) -> List[Graph]:
    """
    Children of `parent` in canonical form, one per isomorphism class whose
    canonical parent is `parent`'s class.
    """
    n = parent.n
    degrees = parent.degrees()
    parent_code = canonical_code(parent)
    low = min(degrees, default=0)
    seen = set()
    children = []
    for d in range(0, min(n, low + 1) + 1):
        for chosen in itertools.combinations(range(n), d):
            mask = 0
            for v in chosen:
                mask |= 1 << v
            if any(degrees[u] + (mask >> u & 1) < d for u in range(n)):
                continue
            adj = [
                row | (mask >> u & 1) << n for u, row in enumerate(parent.adj)
            ]
            adj.append(mask)
            child = Graph._trusted(n + 1, adj)
            if accept is not None and not accept(child, n):
                continue
            if not _keeps(child, parent_code):
                continue
            code = canonical_code(child)
            if code in seen:
                continue
            seen.add(code)
            children.append(canonical_form(child))
    return children


def _level(graphs: Sequence[Graph], accept: Optional[Accept]) -> List[Graph]:
    result = []
    for parent in graphs:
        result.extend(augment(parent, accept))
    return result


def _shard(
    payload: Tuple[List[Tuple[int, Tuple[int, ...]]], Optional[Accept]]
) -> List[Tuple[int, Tuple[int, ...]]]:
    parents, accept = payload
    graphs = _level([Graph._trusted(n, adj) for n, adj in parents], accept)
    return [(g.n, g.adj) for g in graphs]


def levels_below(n: int, accept: Optional[Accept] = None) -> List[Graph]:
    """
    All accepted classes on ``n - 1`` vertices, generated level by level.
    """
    graphs = [Graph._trusted(0, ())]
    for size in range(n - 1):
        graphs = _level(graphs, accept)
        log.debug("level %d: %d graphs", size + 1, len(graphs))
    return graphs


def enumerate_graphs(
    n: int,
    *,
    accept: Optional[Accept] = None,
    threads: Optional[int] = None,
) -> Iterator[Graph]:
    """
    Yields one graph per isomorphism class on `n` vertices (per accepted
    class, with a filter), each in canonical form.

    The last level is split across `threads` worker processes; the output
    order does not depend on the worker count.
    """
    _check_n(n)
    if n == 0:
        yield Graph._trusted(0, ())
        return
    parents = levels_below(n, accept)
    threads = threads or get_settings().threads
    if threads <= 1 or len(parents) < 2 * threads:
        for parent in parents:
            yield from augment(parent, accept)
        return

    chunk = max(1, len(parents) // (4 * threads))
    payloads = [
        ([(p.n, p.adj) for p in group], accept)
        for group in (list(g) for g in grouper_it(chunk, parents))
    ]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for result in pool.map(_shard, payloads):
            for size, adj in result:
                yield Graph._trusted(size, adj)


def count_graphs(n: int, **kwargs) -> int:
    """
    Number of classes on `n` vertices. Unfiltered counts are checked against
    :data:`KNOWN_COUNTS`.

    :raises Counterexample: The generator disagrees with the known count.
    """
    count = sum(1 for _ in enumerate_graphs(n, **kwargs))
    if kwargs.get("accept") is None and count != KNOWN_COUNTS[n]:
        raise Counterexample(
            "count_graphs",
            "",
            f"generated {count} classes on {n} vertices,"
            f" expected {KNOWN_COUNTS[n]}",
        )
    return count

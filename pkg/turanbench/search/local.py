"""
Lower bounds beyond the reach of exhaustive search.

A hill climber adds edges one at a time, always taking the addition that
gains the most (smallest pair first on ties) among those that keep the graph
free of every forbidden pattern. Removing edges never creates a forbidden
copy, so each restart thins out the best graph found so far at random and
climbs again.
"""

import logging
import random
from typing import Iterable, List, Optional, Union

from turanbench.config import get_settings
from turanbench.errors import InvalidArgument, PreconditionViolation
from turanbench.graph import Edge, Graph, codegree, delete_edges
from turanbench.graph6 import encode_graph6
from turanbench.patterns import Pattern, catalog_get, find_free_violation
from turanbench.search.extremal import (
    OBJECTIVES,
    ExtremalRecord,
    _value,
    forbidden_names,
)

__all__ = ("local_search_lower_bound",)

log = logging.getLogger(__name__)


def _candidates(g: Graph, objective: str) -> List[Edge]:
    pairs = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if not g.has_edge(u, v)
    ]
    if objective == "triangles":
        pairs.sort(key=lambda e: (-codegree(g, *e), e))
    return pairs


def _climb(g: Graph, patterns: List[Pattern], objective: str):
    """
    Adds the best free edge until none is left. Returns the final graph and
    the number of candidate graphs tested.
    """
    tested = 0
    while True:
        for u, v in _candidates(g, objective):
            adj = list(g.adj)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            child = Graph._trusted(g.n, tuple(adj))
            tested += 1
            # Every new copy uses the edge uv, so it passes through u.
            if find_free_violation(child, patterns, anchor=u) is None:
                g = child
                break
        else:
            return g, tested


def _thin(g: Graph, rng: random.Random) -> Graph:
    edges = g.edges()
    if not edges:
        return g
    count = rng.randint(1, max(1, len(edges) // 4))
    return delete_edges(g, rng.sample(edges, count))


def local_search_lower_bound(
    n: int,
    forbidden: Iterable[Union[str, Pattern]],
    *,
    budget: int = 16,
    seed: Optional[int] = None,
    start: Optional[Graph] = None,
    objective: str = "triangles",
) -> ExtremalRecord:
    """
    Searches for a graph on `n` vertices with many triangles (or edges) that
    is free of every pattern in `forbidden`.

    The result is a lower bound only. It never falls below the value of
    `start`, and the same `seed` and `budget` always give the same record.

    :param budget: Number of restarts after the first climb.
    :param seed: Seed of the restart generator. Defaults to the configured
                 seed.
    :param start: Free graph to climb from, instead of the empty graph.
    :raises PreconditionViolation: `start` is not free.
    """
    settings = get_settings()
    if objective not in OBJECTIVES:
        raise InvalidArgument(
            f"objective must be one of {OBJECTIVES}", argument="objective"
        )
    if not 0 <= n <= settings.max_vertices:
        raise InvalidArgument(
            f"n must be in [0, {settings.max_vertices}], got {n}",
            argument="n",
        )
    if budget < 0:
        raise InvalidArgument("budget must be non-negative", argument="budget")
    names = forbidden_names(forbidden)
    patterns = [catalog_get(name) for name in names]
    seed = settings.seed if seed is None else seed

    if start is None:
        start = Graph.empty(n)
    elif start.n != n:
        raise InvalidArgument(
            f"start graph has {start.n} vertices, expected {n}",
            argument="start",
        )
    violation = find_free_violation(start, patterns)
    if violation is not None:
        raise PreconditionViolation(violation[0].name, violation[1])

    best, scanned = _climb(start, patterns, objective)
    best_value = _value(best, objective)
    rng = random.Random(seed)
    for restart in range(budget):
        restart_rng = random.Random(rng.getrandbits(64))
        g, tested = _climb(_thin(best, restart_rng), patterns, objective)
        scanned += tested
        value = _value(g, objective)
        log.debug("restart %d reached %d", restart, value)
        if value > best_value:
            best, best_value = g, value

    log.info(
        "local search on n=%d, %s: %d after %d restarts",
        n,
        ",".join(names),
        best_value,
        budget,
    )
    return ExtremalRecord(
        n=n,
        forbidden=names,
        value=best_value,
        witness=encode_graph6(best),
        graphs_scanned=scanned,
        method="local-search",
        objective=objective,
        seed=seed,
        budget=budget,
    )

"""
Exact extremal numbers by exhaustive search.

Only graphs free of the forbidden patterns are ever generated: the class is
closed under vertex deletion, so the isomorph-free generator can filter
every level by checking copies through the newly added vertex. On the last
level a parent is skipped when even the best possible new vertex cannot
reach the incumbent value.
"""

import contextlib
import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

from turanbench.config import get_settings
from turanbench.errors import Counterexample, InvalidArgument
from turanbench.graph import Graph, neighbourhood_identity, triangle_count
from turanbench.graph6 import encode_graph6
from turanbench.patterns import Pattern, catalog_get
from turanbench.search.enumerate import (
    FreeOf,
    _check_n,
    augment,
    levels_below,
)
from turanbench.util import grouper_it

__all__ = ("ExtremalRecord", "OBJECTIVES", "exact_extremal", "forbidden_names")

log = logging.getLogger(__name__)

OBJECTIVES = ("triangles", "edges")


@dataclass
class ExtremalRecord:
    """
    The result of one extremal computation.
    """

    n: int
    #: Canonical names of the forbidden patterns, sorted.
    forbidden: Tuple[str, ...]
    #: Best value found: a triangle count, or an edge count for the edge
    #: objective.
    value: int
    #: A graph attaining `value`, graph6 encoded.
    witness: str
    graphs_scanned: int
    #: ``exhaustive`` or ``local-search``.
    method: str
    objective: str = "triangles"
    #: Local search only.
    seed: Optional[int] = None
    #: Local search only.
    budget: Optional[int] = None

    @property
    def max_triangles(self) -> Optional[int]:
        return self.value if self.objective == "triangles" else None

    @property
    def key(self) -> Tuple[int, Tuple[str, ...], str, str]:
        return self.n, self.forbidden, self.method, self.objective

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "forbidden": list(self.forbidden),
            "value": self.value,
            "max_triangles": self.max_triangles,
            "witness": self.witness,
            "graphs_scanned": self.graphs_scanned,
            "method": self.method,
            "objective": self.objective,
            "seed": self.seed,
            "budget": self.budget,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExtremalRecord":
        return cls(
            n=int(data["n"]),
            forbidden=tuple(data["forbidden"]),
            value=int(data["value"]),
            witness=str(data["witness"]),
            graphs_scanned=int(data["graphs_scanned"]),
            method=str(data["method"]),
            objective=str(data.get("objective", "triangles")),
            seed=data.get("seed"),
            budget=data.get("budget"),
        )


def forbidden_names(
    forbidden: Iterable[Union[str, Pattern]]
) -> Tuple[str, ...]:
    """
    Resolves patterns or names and returns their canonical names, sorted and
    without repeats.
    """
    names = set()
    for item in forbidden:
        if not isinstance(item, Pattern):
            item = catalog_get(item)
        names.add(item.name)
    if not names:
        raise InvalidArgument(
            "the forbidden set is empty", argument="forbidden"
        )
    return tuple(sorted(names))


def _value(g: Graph, objective: str) -> int:
    return triangle_count(g) if objective == "triangles" else g.edge_count


def _potential(parent: Graph, objective: str) -> int:
    # The new vertex adds at most e(N(v)) <= e(P) triangles, or n - 1 edges.
    if objective == "triangles":
        return triangle_count(parent) + parent.edge_count
    return parent.edge_count + parent.n


class _Cell:
    """
    Stand-in for a shared ``multiprocessing.Value`` in a single process.
    """

    def __init__(self, value: int):
        self.value = value

    def get_lock(self):
        return contextlib.nullcontext()


_incumbent = None


def _install(cell):
    global _incumbent
    _incumbent = cell


def _raise_incumbent(cell, value: int):
    if value > cell.value:
        with cell.get_lock():
            if value > cell.value:
                cell.value = value


def _scan(
    parents: Sequence[Graph],
    accept: FreeOf,
    objective: str,
    prune: bool,
    cell,
) -> Tuple[int, Optional[str], int]:
    best, witness, scanned = -1, None, 0
    check = log.isEnabledFor(logging.DEBUG)
    for parent in parents:
        if prune and _potential(parent, objective) < cell.value:
            continue
        for child in augment(parent, accept):
            scanned += 1
            if check and not neighbourhood_identity(child):
                raise Counterexample(
                    "exact_extremal:identity", encode_graph6(child)
                )
            value = _value(child, objective)
            if value < best:
                continue
            g6 = encode_graph6(child)
            if value > best or g6 < witness:
                best, witness = value, g6
                _raise_incumbent(cell, value)
    return best, witness, scanned


def _scan_shard(payload) -> Tuple[int, Optional[str], int]:
    parents, names, objective, prune = payload
    graphs = [Graph._trusted(n, adj) for n, adj in parents]
    return _scan(graphs, FreeOf(names), objective, prune, _incumbent)


def exact_extremal(
    n: int,
    forbidden: Iterable[Union[str, Pattern]],
    *,
    objective: str = "triangles",
    prune: bool = True,
    threads: Optional[int] = None,
) -> ExtremalRecord:
    """
    Computes the maximum number of triangles (or edges) over all graphs on
    `n` vertices free of every pattern in `forbidden`.

    The witness is the attaining graph whose canonical graph6 string is
    smallest, so the record does not depend on `prune` or `threads`.

    :param prune: Skip parents that cannot beat the incumbent. Disabling it
                  scans every free graph.
    :param threads: Worker processes for the last level.
    """
    if objective not in OBJECTIVES:
        raise InvalidArgument(
            f"objective must be one of {OBJECTIVES}", argument="objective"
        )
    _check_n(n)
    names = forbidden_names(forbidden)
    accept = FreeOf(names)

    if n == 0:
        empty = Graph._trusted(0, ())
        return ExtremalRecord(
            0, names, 0, encode_graph6(empty), 1, "exhaustive", objective
        )

    parents = levels_below(n, accept)
    # Promising parents first, so the incumbent rises early.
    parents.sort(key=lambda p: -_potential(p, objective))
    threads = threads or get_settings().threads

    if threads <= 1 or len(parents) < 2 * threads:
        results = [_scan(parents, accept, objective, prune, _Cell(-1))]
    else:
        cell = multiprocessing.Value("q", -1)
        chunk = max(1, len(parents) // (4 * threads))
        payloads = [
            ([(p.n, p.adj) for p in group], names, objective, prune)
            for group in (list(g) for g in grouper_it(chunk, parents))
        ]
        with ProcessPoolExecutor(
            max_workers=threads, initializer=_install, initargs=(cell,)
        ) as pool:
            results = list(pool.map(_scan_shard, payloads))

    best, witness, scanned = -1, None, 0
    for value, g6, count in results:
        scanned += count
        if g6 is None:
            continue
        if value > best or (value == best and g6 < witness):
            best, witness = value, g6

    record = ExtremalRecord(
        n=n,
        forbidden=names,
        value=best,
        witness=witness,
        graphs_scanned=scanned,
        method="exhaustive",
        objective=objective,
    )
    log.info(
        "ex(%d, %s) = %d over %d graphs",
        n,
        ",".join(names),
        best,
        scanned,
    )
    return record


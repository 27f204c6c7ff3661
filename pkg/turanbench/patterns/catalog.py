"""
The pattern catalog.

Fixed patterns live in :data:`CATALOG`, one :class:`CatalogEntry` per
pattern, and parametric families (``path:k``, ``cycle:k``, ``complete:r``,
``complete-bipartite:a,b``, ``complete-multipartite:p1,...``, ``book:s`` and
``suspension:<inner>``) are built on demand. Vertex numbering is part of the
contract: the cleaning rules address vertices and edges by the roles recorded
here.

.. note::

    Names are lowercase and colon-parameterized, exactly as accepted on the
    command line, e.g. ``suspension:path:4`` or ``k6-2-1``.
"""

import itertools
from dataclasses import dataclass, field
from functools import cache
from typing import Callable, Dict, List, Optional, Tuple

from turanbench.errors import InvalidArgument
from turanbench.graph import Edge, Graph
from turanbench.patterns.detect import Pattern

__all__ = (
    "CatalogEntry",
    "CATALOG",
    "catalog_get",
    "list_catalog",
    "parse_pattern_list",
)

#: Hat shorthands for suspended paths.
SHORTHANDS = {
    "p3hat": "suspension:path:3",
    "p4hat": "suspension:path:4",
    "p5hat": "suspension:path:5",
}


def _complete_minus(n: int, missing: List[Edge]) -> List[Edge]:
    missing = {tuple(sorted(e)) for e in missing}
    return [e for e in itertools.combinations(range(n), 2) if e not in missing]


def _wheel(rim: int) -> List[Edge]:
    spokes = [(0, i) for i in range(1, rim + 1)]
    cycle = [(i, i % rim + 1) for i in range(1, rim + 1)]
    return spokes + cycle


@dataclass
class CatalogEntry:
    """
    A single fixed pattern in the catalog.
    """

    name: str
    #: Number of vertices of the realization.
    n: int
    #: Edge list of the realization.
    edges: List[Edge]
    #: Other names resolving to this entry.
    aliases: List[str] = field(default_factory=list)
    #: Named vertex and edge tuples, see :attr:`Pattern.roles`.
    roles: Dict[str, tuple] = field(default_factory=dict)
    #: If set, the entry is the suspension of this catalog name.
    inner: Optional[str] = None
    # Maintainer notes.
    notes: List[str] = field(default_factory=list)


CATALOG = [
    CatalogEntry(name="k3", n=3, edges=_complete_minus(3, [])),
    CatalogEntry(name="k4", n=4, edges=_complete_minus(4, [])),
    CatalogEntry(name="k5", n=5, edges=_complete_minus(5, [])),
    CatalogEntry(
        name="k5minus",
        n=5,
        edges=_complete_minus(5, [(0, 1)]),
        roles={"missing": ((0, 1),)},
        notes=["a, b, c, d, e are vertices 0..4; ab is missing."],
    ),
    CatalogEntry(name="k6", n=6, edges=_complete_minus(6, [])),
    CatalogEntry(
        name="k6minus",
        n=6,
        edges=_complete_minus(6, [(0, 1)]),
        roles={"missing": ((0, 1),)},
    ),
    CatalogEntry(
        name="k6-2-1",
        n=6,
        edges=_complete_minus(6, [(0, 1), (1, 2)]),
        roles={"missing": ((0, 1), (1, 2))},
        notes=["Two intersecting edges ab, bc removed; a..f are 0..5."],
    ),
    CatalogEntry(
        name="k6-2-2",
        n=6,
        edges=_complete_minus(6, [(0, 1), (2, 3)]),
        roles={"missing": ((0, 1), (2, 3))},
        notes=["Two disjoint edges ab, cd removed."],
    ),
    CatalogEntry(
        name="k6-3-1",
        n=6,
        edges=_complete_minus(6, [(0, 1), (1, 2), (2, 3)]),
        roles={"missing": ((0, 1), (1, 2), (2, 3))},
        notes=["A path ab, bc, cd removed."],
    ),
    CatalogEntry(
        name="k6-3-2",
        n=6,
        edges=_complete_minus(6, [(0, 1), (2, 3), (3, 4)]),
        roles={"missing": ((0, 1), (2, 3), (3, 4))},
        notes=["A path cd, de and a disjoint edge ab removed."],
    ),
    CatalogEntry(
        name="k222",
        n=6,
        edges=_complete_minus(6, [(0, 2), (1, 3), (4, 5)]),
        roles={
            "centers": (4, 5),
            "outer": ((0, 1), (1, 2), (2, 3), (0, 3)),
        },
        notes=["Outer C4 a1a2a3a4 on 0..3, centers c1, c2 on 4, 5."],
    ),
    CatalogEntry(
        name="q32",
        n=6,
        edges=[
            (0, 4),
            (4, 5),
            (2, 5),
            (0, 1),
            (1, 2),
            (2, 3),
            (0, 3),
            (1, 4),
            (1, 5),
            (3, 4),
            (3, 5),
        ],
        roles={
            "centers": (4, 5),
            "outer": ((0, 1), (1, 2), (2, 3), (0, 3)),
        },
        notes=[
            "The empty graph {a2, a4} joined to the path a1 c1 c2 a3.",
            "a1..a4 are 0..3 and form the outer C4; c1, c2 are 4, 5.",
        ],
    ),
    CatalogEntry(
        name="w5",
        n=6,
        edges=_wheel(5),
        inner="cycle:5",
        roles={
            "center": (0,),
            "spokes": tuple((0, i) for i in range(1, 6)),
            "outer": tuple((i, i % 5 + 1) for i in range(1, 6)),
        },
    ),
    CatalogEntry(
        name="w5plus",
        n=6,
        edges=_wheel(5) + [(1, 3)],
        roles={
            "center": (0,),
            "spokes": tuple((0, i) for i in range(1, 6)),
            "chord": ((1, 3),),
        },
        notes=["Center x is 0, rim abcde is 1..5, chord ac."],
    ),
    CatalogEntry(
        name="k122",
        n=5,
        edges=_wheel(4),
        aliases=["w4"],
        inner="cycle:4",
        roles={
            "center": (0,),
            "spokes": tuple((0, i) for i in range(1, 5)),
            "outer": ((1, 2), (2, 3), (3, 4), (1, 4)),
        },
        notes=["Center x is 0, outer cycle abcd is 1..4."],
    ),
]

_BY_NAME: Dict[str, CatalogEntry] = {}
for _entry in CATALOG:
    _BY_NAME[_entry.name] = _entry
    for _alias in _entry.aliases:
        _BY_NAME[_alias] = _entry


def list_catalog() -> List[str]:
    """
    Names of the fixed catalog entries, in registry order.
    """
    return [entry.name for entry in CATALOG]


def _ints(text: str, name: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InvalidArgument(
            f"bad parameters {text!r} for {name}", argument="name"
        ) from None


def _one(params: Tuple[int, ...], name: str) -> int:
    if len(params) != 1:
        raise InvalidArgument(f"{name} takes one parameter", argument="name")
    return params[0]


def _path(k: int) -> Tuple[int, List[Edge], dict]:
    if k < 1:
        raise InvalidArgument("path:k needs k >= 1", argument="name")
    return k + 1, [(i, i + 1) for i in range(k)], {}


def _cycle(k: int) -> Tuple[int, List[Edge], dict]:
    if k < 3:
        raise InvalidArgument("cycle:k needs k >= 3", argument="name")
    return k, [(i, (i + 1) % k) for i in range(k)], {}


def _complete(r: int) -> Tuple[int, List[Edge], dict]:
    if r < 1:
        raise InvalidArgument("complete:r needs r >= 1", argument="name")
    return r, _complete_minus(r, []), {}


def _multipartite(parts: Tuple[int, ...]) -> Tuple[int, List[Edge], dict]:
    if not parts or any(p < 1 for p in parts):
        raise InvalidArgument("part sizes must be >= 1", argument="name")
    owner = [i for i, size in enumerate(parts) for _ in range(size)]
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(len(owner)), 2)
        if owner[u] != owner[v]
    ]
    return len(owner), edges, {}


def _bipartite(params: Tuple[int, ...]) -> Tuple[int, List[Edge], dict]:
    if len(params) != 2 or not 1 <= params[0] <= params[1]:
        raise InvalidArgument(
            "complete-bipartite:a,b needs 1 <= a <= b", argument="name"
        )
    return _multipartite(params)


def _book(s: int) -> Tuple[int, List[Edge], dict]:
    if s < 1:
        raise InvalidArgument("book:s needs s >= 1", argument="name")
    edges = [(0, 1)]
    for page in range(2, s + 2):
        edges += [(0, page), (1, page)]
    return s + 2, edges, {"spine": ((0, 1),)}


PARAMETRIC_FAMILIES: Dict[
    str, Callable[[Tuple[int, ...], str], Tuple[int, List[Edge], dict]]
] = {
    "path": lambda p, name: _path(_one(p, name)),
    "cycle": lambda p, name: _cycle(_one(p, name)),
    "complete": lambda p, name: _complete(_one(p, name)),
    "complete-bipartite": lambda p, name: _bipartite(p),
    "complete-multipartite": lambda p, name: _multipartite(p),
    "book": lambda p, name: _book(_one(p, name)),
}


def suspend(inner: Pattern, name: Optional[str] = None) -> Pattern:
    """
    Returns the suspension of `inner`: a new apex, vertex 0, joined to every
    inner vertex.
    """
    if inner.has_isolated_vertices:
        raise InvalidArgument(
            f"cannot suspend {inner.name}: it has isolated vertices",
            argument="name",
        )
    k = inner.n
    edges = [(0, i + 1) for i in range(k)]
    edges += [(u + 1, v + 1) for u, v in inner.realization.edges()]
    return Pattern(
        name=name or f"suspension:{inner.name}",
        realization=Graph.from_edges(k + 1, edges),
        inner=inner,
        roles={"center": (0,), "spokes": tuple(edges[:k])},
    )


@cache
def catalog_get(name: str) -> Pattern:
    """
    Returns the pattern called `name`.

    Repeated calls return equal (and, thanks to caching, identical) values.

    :raises InvalidArgument: Unknown names or invalid parameters.
    """
    name = name.strip().lower()
    name = SHORTHANDS.get(name, name)

    if name.startswith("suspension:"):
        return suspend(catalog_get(name[len("suspension:"):]), name)

    entry = _BY_NAME.get(name)
    if entry is not None:
        realization = Graph.from_edges(entry.n, entry.edges)
        if entry.inner is not None:
            pattern = suspend(catalog_get(entry.inner), entry.name)
            if pattern.realization != realization:
                raise AssertionError(f"{entry.name} is not a suspension")
        return Pattern(
            name=entry.name,
            realization=realization,
            inner=catalog_get(entry.inner) if entry.inner else None,
            roles=dict(entry.roles),
        )

    family, _, params = name.partition(":")
    builder = PARAMETRIC_FAMILIES.get(family)
    if builder is None or not params:
        raise InvalidArgument(
            f"unknown pattern {name!r}; valid names are"
            f" {', '.join(list_catalog() + sorted(SHORTHANDS))},"
            f" {', '.join(f'{f}:...' for f in PARAMETRIC_FAMILIES)}"
            f" and suspension:<pattern>",
            argument="name",
        )
    n, edges, roles = builder(_ints(params, family), family)
    return Pattern(
        name=f"{family}:{params}",
        realization=Graph.from_edges(n, edges),
        roles=roles,
    )


def parse_pattern_list(text: str) -> List[Pattern]:
    """
    Parses a comma-separated list of pattern names.

    Commas inside parameter lists are kept with their family, so
    ``complete-bipartite:2,3,k4`` parses as two patterns.
    """
    names: List[str] = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        if part.isdigit() and names:
            names[-1] = f"{names[-1]},{part}"
        else:
            names.append(part)
    return [catalog_get(name) for name in names]

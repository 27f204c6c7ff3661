"""
Lower-bound constructions.

Both families split the vertices into ``A = {0..n/2-1}`` and
``B = {n/2..n-1}``, join them completely, and then place a sparse graph
inside one or both halves on consecutive index blocks:

``hn``
    Perfect matchings inside A and inside B. Free of K_{1,2,2} and of the
    suspended 4- and 6-cycles, with n^2/4 triangles.

``fnk``
    Disjoint copies of K_{m,m} inside A, where m = floor((k - 1) / 2).
    Free of the suspended k-path, with m n^2 / 8 triangles.
"""

import enum
from dataclasses import dataclass, field
from typing import Dict, Optional

from turanbench.errors import InvalidArgument
from turanbench.graph import Graph, induced_edge_count, triangle_count
from turanbench.patterns import catalog_get, is_free

__all__ = (
    "Family",
    "ConstructionSpec",
    "ConstructionReport",
    "build_hn",
    "build_fnk",
    "build",
    "formula_triangles",
    "verify_construction",
    "p3hat_lower_example",
)


class Family(enum.Enum):
    HN = "hn"
    FNK = "fnk"


@dataclass(frozen=True)
class ConstructionSpec:
    family: Family
    n: int
    #: Path length, only meaningful for ``fnk``.
    k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.HN:
            _check_hn(self.n)
        else:
            if self.k is None:
                raise InvalidArgument("fnk needs k", argument="k")
            _check_fnk(self.n, self.k)

    @property
    def m(self) -> int:
        """
        Biclique side length of ``fnk``.
        """
        return (self.k - 1) // 2

    def __str__(self):
        if self.family is Family.HN:
            return f"hn(n={self.n})"
        return f"fnk(n={self.n}, k={self.k})"


def _check_hn(n: int):
    if n < 4 or n % 4:
        raise InvalidArgument(
            f"hn needs n >= 4 and n divisible by 4, got n={n}", argument="n"
        )


def _check_fnk(n: int, k: int):
    if k < 3:
        raise InvalidArgument(f"fnk needs k >= 3, got k={k}", argument="k")
    modulus = 4 * ((k - 1) // 2)
    if n < modulus or n % modulus:
        raise InvalidArgument(
            f"fnk with k={k} needs n divisible by {modulus}, got n={n}",
            argument="n",
        )


def _bipartite_halves(n: int) -> list:
    half = n // 2
    a = (1 << half) - 1
    b = ((1 << n) - 1) & ~a
    return [b if v < half else a for v in range(n)]


def build_hn(n: int) -> Graph:
    """
    Returns H_n. Requires ``4 | n``.
    """
    _check_hn(n)
    adj = _bipartite_halves(n)
    # (0, 1), (2, 3), ... covers both halves since n/2 is even.
    for v in range(0, n, 2):
        adj[v] |= 1 << (v + 1)
        adj[v + 1] |= 1 << v
    return Graph(n, tuple(adj))


def build_fnk(n: int, k: int) -> Graph:
    """
    Returns F_{n,k}. Requires ``k >= 3`` and ``4 * floor((k - 1) / 2) | n``.
    """
    _check_fnk(n, k)
    m = (k - 1) // 2
    adj = _bipartite_halves(n)
    for start in range(0, n // 2, 2 * m):
        left = ((1 << m) - 1) << start
        right = left << m
        for v in range(start, start + m):
            adj[v] |= right
            adj[v + m] |= left
    return Graph(n, tuple(adj))


def build(spec: ConstructionSpec) -> Graph:
    if spec.family is Family.HN:
        return build_hn(spec.n)
    return build_fnk(spec.n, spec.k)


def formula_triangles(spec: ConstructionSpec) -> int:
    """
    The closed-form triangle count of the construction.
    """
    if spec.family is Family.HN:
        return spec.n * spec.n // 4
    return spec.m * spec.n * spec.n // 8


def _forbidden(spec: ConstructionSpec):
    if spec.family is Family.HN:
        return ["k122", "suspension:cycle:4", "suspension:cycle:6"]
    return [f"suspension:path:{spec.k}"]


@dataclass
class ConstructionReport:
    spec: ConstructionSpec
    triangles: int
    formula: int
    edges: int
    #: e(A), the edges inside the first half.
    inner_edges: int
    #: Pattern name to True when the construction is free of it.
    free: Dict[str, bool] = field(default_factory=dict)
    #: ``fnk`` only: every B vertex sees exactly A.
    b_links_match: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return (
            self.triangles == self.formula
            and all(self.free.values())
            and self.b_links_match is not False
        )

    def as_dict(self) -> dict:
        return {
            "family": self.spec.family.value,
            "n": self.spec.n,
            "k": self.spec.k,
            "triangles": self.triangles,
            "formula": self.formula,
            "edges": self.edges,
            "inner_edges": self.inner_edges,
            "free": dict(self.free),
            "b_links_match": self.b_links_match,
            "ok": self.ok,
        }


def verify_construction(spec: ConstructionSpec) -> ConstructionReport:
    """
    Builds the construction and checks it against its formula and its
    forbidden patterns.
    """
    g = build(spec)
    half = (1 << (spec.n // 2)) - 1
    report = ConstructionReport(
        spec=spec,
        triangles=triangle_count(g),
        formula=formula_triangles(spec),
        edges=g.edge_count,
        inner_edges=induced_edge_count(g, half),
        free={
            name: is_free(g, [catalog_get(name)]) for name in _forbidden(spec)
        },
    )
    if spec.family is Family.FNK:
        report.b_links_match = all(
            g.adj[v] == half for v in range(spec.n // 2, spec.n)
        )
    return report


def p3hat_lower_example(n: int) -> Graph:
    """
    Disjoint K4's with a clique on the leftover ``n mod 4`` vertices.

    Every neighborhood is a triangle or smaller, so the graph is free of the
    suspended 3-path.
    """
    if n < 0:
        raise InvalidArgument("n must be non-negative", argument="n")
    adj = [0] * n
    for start in range(0, n, 4):
        block = ((1 << min(4, n - start)) - 1) << start
        for v in range(start, min(start + 4, n)):
            adj[v] = block & ~(1 << v)
    return Graph(n, tuple(adj))

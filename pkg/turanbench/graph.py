"""
Dense undirected simple graphs over vertex ids ``0..n-1``.

A :class:`Graph` stores one neighbor bitset per vertex as a Python int, which
covers both the single-word case (n <= 64) and the wider graphs needed for
formula checks. Graphs are immutable values: every mutator returns a new
graph and leaves its input untouched.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from turanbench.config import HARD_VERTEX_LIMIT, get_settings
from turanbench.errors import InvalidArgument
from turanbench.util import iter_bits, mask_of, popcount

__all__ = (
    "Graph",
    "VertexSet",
    "Triangle",
    "Edge",
    "triangle_count",
    "list_triangles",
    "codegree",
    "common_neighborhood",
    "induced_edge_count",
    "path_count",
    "delete_edges",
    "add_edges",
    "delete_vertex",
    "induced_subgraph",
    "disjoint_union",
    "relabel",
    "triangles_at",
    "neighbourhood_identity",
    "nordhaus_stewart_holds",
    "degree_path_bound_holds",
)

Edge = Tuple[int, int]


class Triangle(NamedTuple):
    """
    A triangle ``a < b < c``.
    """

    a: int
    b: int
    c: int

    @classmethod
    def of(cls, x: int, y: int, z: int) -> "Triangle":
        a, b, c = sorted((x, y, z))
        return cls(a, b, c)

    @property
    def edges(self) -> Tuple[Edge, Edge, Edge]:
        return (self.a, self.b), (self.a, self.c), (self.b, self.c)


@dataclass(frozen=True)
class VertexSet:
    """
    A set of vertex ids stored as a bitset.
    """

    #: Bit ``v`` is set iff vertex ``v`` is a member.
    members: int = 0

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        vertices = list(vertices)
        if any(v < 0 for v in vertices):
            raise InvalidArgument("vertex ids must be non-negative")
        return cls(mask_of(vertices))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.members)

    def __len__(self) -> int:
        return popcount(self.members)

    def __contains__(self, v: int) -> bool:
        return v >= 0 and bool(self.members >> v & 1)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.members & other.members)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.members | other.members)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.members & ~other.members)

    def __repr__(self):
        return f"VertexSet({sorted(self)})"


def _as_mask(x) -> int:
    if isinstance(x, VertexSet):
        return x.members
    if isinstance(x, int):
        return x
    return mask_of(x)


@dataclass(frozen=True)
class Graph:
    """
    An undirected simple graph on the vertices ``0..n-1``.

    :param n: The number of vertices.
    :param adj: One neighbor bitset per vertex.
    """

    n: int
    adj: Tuple[int, ...]
    #: Cached number of edges.
    edge_count: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "adj", tuple(self.adj))
        limit = min(get_settings().max_vertices, HARD_VERTEX_LIMIT)
        if not 0 <= self.n <= limit:
            raise InvalidArgument(
                f"vertex count {self.n} outside [0, {limit}]", argument="n"
            )
        if len(self.adj) != self.n:
            raise InvalidArgument(
                f"expected {self.n} adjacency rows, got {len(self.adj)}",
                argument="adj",
            )
        full = (1 << self.n) - 1
        total = 0
        for v, row in enumerate(self.adj):
            if row & ~full or row < 0:
                raise InvalidArgument(
                    f"row {v} has bits outside the vertex range"
                )
            if row >> v & 1:
                raise InvalidArgument(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise InvalidArgument(
                        f"adjacency is not symmetric at ({v}, {u})"
                    )
            total += popcount(row)
        object.__setattr__(self, "edge_count", total // 2)

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        # Skips validation; only for rows built by this package.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        object.__setattr__(
            g, "edge_count", sum(popcount(row) for row in adj) // 2
        )
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        """
        Build a graph from an edge list.

        Repeated edges are ignored; loops and out-of-range endpoints raise
        :class:`~turanbench.errors.InvalidArgument`.
        """
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidArgument(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"edge ({u}, {v}) outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    def __repr__(self):
        return f"{self.__class__.__name__}(n={self.n}, e={self.edge_count})"

    @property
    def vertices(self) -> VertexSet:
        return VertexSet((1 << self.n) - 1)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> List[int]:
        return [popcount(row) for row in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def edges(self) -> List[Edge]:
        """
        All edges ``(u, v)`` with ``u < v``, in lexicographic order.
        """
        return [
            (u, v)
            for u in range(self.n)
            for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))
        ]

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and all(
            a & ~b == 0 for a, b in zip(self.adj, other.adj)
        )


def triangle_count(g: Graph) -> int:
    """
    Returns the number of triangles in `g`.
    """
    adj = g.adj
    t = 0
    for u in range(g.n):
        for v in iter_bits(adj[u] >> (u + 1) << (u + 1)):
            t += popcount((adj[u] & adj[v]) >> (v + 1))
    return t


def list_triangles(g: Graph) -> List[Triangle]:
    """
    Returns every triangle of `g` exactly once, in lexicographic order.
    """
    adj = g.adj
    result = []
    for u in range(g.n):
        for v in iter_bits(adj[u] >> (u + 1) << (u + 1)):
            for w in iter_bits((adj[u] & adj[v]) >> (v + 1) << (v + 1)):
                result.append(Triangle(u, v, w))
    return result


def codegree(g: Graph, u: int, v: int) -> int:
    """
    Returns the number of common neighbors of `u` and `v`.

    `uv` does not need to be an edge.
    """
    if u == v:
        raise InvalidArgument("codegree needs two distinct vertices")
    return popcount(g.adj[u] & g.adj[v])


def common_neighborhood(g: Graph, s) -> VertexSet:
    """
    Returns the set of vertices adjacent to every vertex in `s`.

    :param s: A non-empty :class:`VertexSet`, bitset or iterable of vertices.
    """
    members = _as_mask(s)
    if not members:
        raise InvalidArgument("common neighborhood of the empty set")
    result = (1 << g.n) - 1
    for v in iter_bits(members):
        result &= g.adj[v]
    return VertexSet(result)


def induced_edge_count(g: Graph, x) -> int:
    """
    Returns e(X), the number of edges with both endpoints in `x`.
    """
    members = _as_mask(x)
    return sum(popcount(g.adj[v] & members) for v in iter_bits(members)) // 2


def triangles_at(g: Graph, v: int) -> int:
    """
    Returns t(v), the number of triangles containing `v`, as e(N(v)).
    """
    return induced_edge_count(g, g.adj[v])


def path_count(g: Graph, k: int) -> int:
    """
    Returns p_k(g), the number of paths with `k` edges where each path is
    counted once per orientation.
    """
    if k < 1:
        raise InvalidArgument("path length must be at least 1", argument="k")
    if k >= g.n:
        return 0
    adj = g.adj

    def extend(v: int, used: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        free = adj[v] & ~used
        if remaining == 1:
            return popcount(free)
        return sum(
            extend(w, used | 1 << w, remaining - 1) for w in iter_bits(free)
        )

    return sum(extend(v, 1 << v, k) for v in range(g.n))


def _normalize(g: Graph, edges: Iterable[Edge]) -> List[Edge]:
    seen = set()
    for u, v in edges:
        if u == v:
            raise InvalidArgument(f"({u}, {v}) is a loop", argument="edges")
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise InvalidArgument(
                f"({u}, {v}) outside 0..{g.n - 1}", argument="edges"
            )
        seen.add((u, v) if u < v else (v, u))
    return sorted(seen)


def delete_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    """
    Returns a copy of `g` without `edges`.

    Every listed pair must be an edge of `g`; listing a non-edge raises
    :class:`~turanbench.errors.InvalidArgument`.
    """
    adj = list(g.adj)
    for u, v in _normalize(g, edges):
        if not adj[u] >> v & 1:
            raise InvalidArgument(
                f"({u}, {v}) is not an edge", argument="edges"
            )
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph._trusted(g.n, adj)


def add_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    """
    Returns a copy of `g` with `edges` added. Existing edges are ignored.
    """
    adj = list(g.adj)
    for u, v in _normalize(g, edges):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph._trusted(g.n, adj)


def toggle_edge(g: Graph, u: int, v: int) -> Graph:
    adj = list(g.adj)
    adj[u] ^= 1 << v
    adj[v] ^= 1 << u
    return Graph._trusted(g.n, adj)


def induced_subgraph(g: Graph, x) -> Graph:
    """
    Returns G[X], relabelled so that the members of `x` become
    ``0..|x|-1`` in ascending order.
    """
    members = list(iter_bits(_as_mask(x)))
    position = {v: i for i, v in enumerate(members)}
    adj = []
    for v in members:
        row = 0
        for w in iter_bits(g.adj[v] & _as_mask(x)):
            row |= 1 << position[w]
        adj.append(row)
    return Graph._trusted(len(members), adj)


def delete_vertex(g: Graph, v: int) -> Graph:
    """
    Returns G - v with the remaining vertices relabelled in order.
    """
    return induced_subgraph(g, ((1 << g.n) - 1) & ~(1 << v))


def disjoint_union(*graphs: Graph) -> Graph:
    adj = []
    offset = 0
    for h in graphs:
        adj.extend(row << offset for row in h.adj)
        offset += h.n
    return Graph(offset, tuple(adj))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """
    Returns the graph with vertex ``v`` renamed to ``perm[v]``.
    """
    if sorted(perm) != list(range(g.n)):
        raise InvalidArgument("perm is not a permutation of the vertices")
    adj = [0] * g.n
    for v in range(g.n):
        row = 0
        for w in iter_bits(g.adj[v]):
            row |= 1 << perm[w]
        adj[perm[v]] = row
    return Graph._trusted(g.n, adj)


def neighbourhood_identity(g: Graph) -> bool:
    """
    Checks 3 t(G) = sum over v of e(N(v)).
    """
    return 3 * triangle_count(g) == sum(
        triangles_at(g, v) for v in range(g.n)
    )


def nordhaus_stewart_holds(g: Graph) -> bool:
    """
    Checks t(G) >= e(G)(4e(G) - n^2) / (3n), exactly.
    """
    if g.n == 0:
        return True
    e = g.edge_count
    return triangle_count(g) >= Fraction(e * (4 * e - g.n * g.n), 3 * g.n)


def degree_path_bound_holds(g: Graph, k: int) -> bool:
    """
    Checks p_k(G) <= n * max_degree(G)^k.
    """
    return path_count(g, k) <= g.n * g.max_degree() ** k

"""
Structural decompositions of a graph's triangles.

Triangle blocks, book recognition, light/heavy edge classification, BFS level
statistics, the triangle-share graph, the shared-edge hypergraph count and a
chorded-cycle finder.
"""

import enum
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from turanbench.config import get_settings
from turanbench.errors import Counterexample, InvalidArgument
from turanbench.graph import (
    Edge,
    Graph,
    Triangle,
    VertexSet,
    codegree,
    common_neighborhood,
    induced_edge_count,
    list_triangles,
    path_count,
    triangle_count,
    triangles_at,
)
from turanbench.graph6 import encode_graph6
from turanbench.patterns import CATALOG, catalog_get, find_embedding
from turanbench.util import iter_bits, mask_of, popcount

__all__ = (
    "BlockDecomposition",
    "EdgeClassification",
    "ThresholdMode",
    "BfsLevels",
    "LevelViolation",
    "TriangleShareGraph",
    "CycleWitness",
    "CliqueStep",
    "triangle_blocks",
    "is_book",
    "is_isolated_block",
    "classify_edges",
    "one_heavy_edge_per_triangle",
    "bfs_levels",
    "check_level_inequalities",
    "shared_edge_hyperedge_count",
    "triangle_share_graph",
    "spencer_lower_bound",
    "find_long_cycle_with_chord",
    "private_neighbourhoods",
    "clique_deletion_step",
    "induction_bound",
    "triangle_summary",
)

log = logging.getLogger(__name__)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        fx, fy = self.find(x), self.find(y)
        if fx != fy:
            self.parent[max(fx, fy)] = min(fx, fy)


@dataclass
class BlockDecomposition:
    """
    The triangle blocks of a graph.

    Two edges are in the same block when a chain of triangles, consecutive
    ones sharing an edge, leads from one to the other.
    """

    #: Edge sets of the blocks, each sorted, ordered by smallest edge.
    blocks: List[Tuple[Edge, ...]]
    #: Edges lying in no triangle.
    uncovered: List[Edge]
    #: Shape of each block: ``book:s``, a catalog name, or ``other``.
    labels: List[str] = field(default_factory=list)
    #: Triangle count of each block.
    triangles: List[int] = field(default_factory=list)

    def __len__(self):
        return len(self.blocks)

    def block_of(self, edge: Edge) -> Optional[int]:
        edge = tuple(sorted(edge))
        for i, block in enumerate(self.blocks):
            if edge in block:
                return i
        return None

    def as_dict(self) -> dict:
        return {
            "blocks": [
                {
                    "edges": [list(e) for e in block],
                    "label": label,
                    "triangles": t,
                }
                for block, label, t in zip(
                    self.blocks, self.labels, self.triangles
                )
            ],
            "uncovered": [list(e) for e in self.uncovered],
        }


def _block_graph(n: int, edges: Sequence[Edge]) -> Graph:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph._trusted(n, adj)


def _label(host: Graph, edges: Tuple[Edge, ...]) -> str:
    s = is_book(edges, host)
    if s is not None:
        return f"book:{s}"

    vertices = mask_of(v for e in edges for v in e)
    block = _block_graph(host.n, edges)
    for entry in CATALOG:
        if entry.n != popcount(vertices) or len(entry.edges) != len(edges):
            continue
        if find_embedding(block, catalog_get(entry.name), within=vertices):
            return entry.name
    return "other"


def triangle_blocks(g: Graph, *, label: bool = True) -> BlockDecomposition:
    """
    Partitions the edges lying in triangles into triangle blocks.
    """
    triangles = list_triangles(g)
    uf = _UnionFind(len(triangles))
    owner: Dict[Edge, int] = {}
    for i, tri in enumerate(triangles):
        for edge in tri.edges:
            if edge in owner:
                uf.union(owner[edge], i)
            else:
                owner[edge] = i

    groups: Dict[int, List[Edge]] = {}
    counts: Dict[int, int] = {}
    for edge, i in owner.items():
        groups.setdefault(uf.find(i), []).append(edge)
    for i in range(len(triangles)):
        root = uf.find(i)
        counts[root] = counts.get(root, 0) + 1

    ordered = sorted(
        (tuple(sorted(edges)), counts[root]) for root, edges in groups.items()
    )
    blocks = [edges for edges, _ in ordered]
    covered = set(owner)
    decomposition = BlockDecomposition(
        blocks=blocks,
        uncovered=[e for e in g.edges() if e not in covered],
        triangles=[t for _, t in ordered],
    )
    if label:
        decomposition.labels = [_label(g, block) for block in blocks]
    return decomposition


def is_book(block: Sequence[Edge], host: Graph) -> Optional[int]:
    """
    Returns `s` if the edges of `block` form exactly a book of `s` triangles
    on a common spine edge, else None.
    """
    edges = set(tuple(sorted(e)) for e in block)
    if len(edges) < 3 or len(edges) % 2 == 0:
        return None
    s = (len(edges) - 1) // 2
    adj: Dict[int, int] = {}
    for u, v in edges:
        if not host.has_edge(u, v):
            return None
        adj[u] = adj.get(u, 0) | 1 << v
        adj[v] = adj.get(v, 0) | 1 << u
    if len(adj) != s + 2:
        return None
    everyone = mask_of(adj)
    for u, v in sorted(edges):
        others = everyone & ~(1 << u) & ~(1 << v)
        if adj[u] | 1 << u != everyone or adj[v] | 1 << v != everyone:
            continue
        if all(adj[w] == (1 << u | 1 << v) for w in iter_bits(others)):
            return s
    return None


def is_isolated_block(g: Graph, vertices) -> bool:
    """
    True iff the edges induced on `vertices` make up one whole triangle
    block of `g`.
    """
    members = VertexSet.of(vertices).members
    induced = tuple(
        (u, v)
        for u in iter_bits(members)
        for v in iter_bits(g.adj[u] & members)
        if u < v
    )
    return induced in triangle_blocks(g, label=False).blocks


class ThresholdMode(enum.Enum):
    #: Light means the edge lies in exactly one triangle.
    UNIQUE_TRIANGLE = "unique-triangle"
    #: Light means the edge has codegree exactly 2.
    CODEGREE_2 = "codegree-2"


@dataclass
class EdgeClassification:
    mode: ThresholdMode
    light: List[Edge]
    heavy: List[Edge]

    @property
    def light_count(self) -> int:
        return len(self.light)

    @property
    def heavy_count(self) -> int:
        return len(self.heavy)


def classify_edges(g: Graph, mode: ThresholdMode) -> EdgeClassification:
    """
    Splits the edges lying in at least one triangle into light and heavy.
    """
    mode = ThresholdMode(mode)
    target = 1 if mode is ThresholdMode.UNIQUE_TRIANGLE else 2
    light, heavy = [], []
    for u, v in g.edges():
        c = codegree(g, u, v)
        if c == 0:
            continue
        (light if c == target else heavy).append((u, v))
    return EdgeClassification(mode=mode, light=light, heavy=heavy)


def one_heavy_edge_per_triangle(g: Graph) -> bool:
    """
    True iff no triangle has two edges of codegree other than 2.
    """
    heavy = set(classify_edges(g, ThresholdMode.CODEGREE_2).heavy)
    return all(
        sum(edge in heavy for edge in tri.edges) <= 1
        for tri in list_triangles(g)
    )


@dataclass
class BfsLevels:
    root: int
    #: ``levels[i]`` is the set of vertices at distance ``i`` from the root.
    levels: List[VertexSet]
    #: ``inner_edges[i]`` is e(L_i).
    inner_edges: List[int]
    #: ``cross_edges[i]`` is e(L_i, L_{i+1}).
    cross_edges: List[int]

    def size(self, i: int) -> int:
        return len(self.levels[i]) if i < len(self.levels) else 0

    def inner(self, i: int) -> int:
        return self.inner_edges[i] if i < len(self.inner_edges) else 0

    def cross(self, i: int) -> int:
        return self.cross_edges[i] if i < len(self.cross_edges) else 0


def bfs_levels(g: Graph, root: int) -> BfsLevels:
    """
    Breadth-first levels of the root's component.
    """
    if not 0 <= root < g.n:
        raise InvalidArgument(f"root {root} not in 0..{g.n - 1}")
    levels = [1 << root]
    seen = 1 << root
    while True:
        frontier = 0
        for v in iter_bits(levels[-1]):
            frontier |= g.adj[v]
        frontier &= ~seen
        if not frontier:
            break
        seen |= frontier
        levels.append(frontier)

    inner = [induced_edge_count(g, level) for level in levels]
    cross = []
    for i, level in enumerate(levels):
        nxt = levels[i + 1] if i + 1 < len(levels) else 0
        cross.append(sum(popcount(g.adj[v] & nxt) for v in iter_bits(level)))
    return BfsLevels(
        root=root,
        levels=[VertexSet(level) for level in levels],
        inner_edges=inner,
        cross_edges=cross,
    )


@dataclass
class LevelViolation:
    level: int
    #: ``"inner"`` for e(L_i), ``"cross"`` for e(L_i, L_{i+1}).
    kind: str
    value: int
    bound: int


def check_level_inequalities(levels: BfsLevels, k: int) -> List[LevelViolation]:
    """
    Checks e(L_i) <= (k-1)|L_i| and e(L_i, L_{i+1}) <= (k-1)(|L_i| +
    |L_{i+1}|) for 1 <= i < k and returns the violations.

    Only reports: hosts containing a 2k-cycle may legitimately violate.
    """
    if k < 2:
        raise InvalidArgument("k must be at least 2", argument="k")
    violations = []
    for i in range(1, k):
        bound = (k - 1) * levels.size(i)
        if levels.inner(i) > bound:
            violations.append(
                LevelViolation(i, "inner", levels.inner(i), bound)
            )
        bound = (k - 1) * (levels.size(i) + levels.size(i + 1))
        if levels.cross(i) > bound:
            violations.append(
                LevelViolation(i, "cross", levels.cross(i), bound)
            )
    return violations


def shared_edge_hyperedge_count(g: Graph, a: int) -> int:
    """
    Number of `a`-sets of triangles sharing a common edge, as the sum over
    edges uv of C(codegree(u, v), a).

    The same quantity is also computed as the sum over `a`-sets S of
    vertices of e(N(S)); a disagreement raises
    :class:`~turanbench.errors.Counterexample`.
    """
    if a < 1:
        raise InvalidArgument("a must be at least 1", argument="a")
    by_edges = sum(math.comb(codegree(g, u, v), a) for u, v in g.edges())
    by_subsets = sum(
        induced_edge_count(g, common_neighborhood(g, subset))
        for subset in itertools.combinations(range(g.n), a)
    )
    if by_edges != by_subsets:
        raise Counterexample(
            "shared_edge_hyperedge_count",
            encode_graph6(g),
            f"a={a}: {by_edges} by edges, {by_subsets} by vertex sets",
        )
    return by_edges


@dataclass
class TriangleShareGraph:
    """
    Graph on the triangles of a host, two triangles adjacent when they share
    an edge.
    """

    #: Vertex ``i`` is ``triangles[i]``, in lexicographic order.
    triangles: List[Triangle]
    #: Adjacency bitsets over triangle indices.
    adj: List[int]

    @property
    def n(self) -> int:
        return len(self.triangles)

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def degree(self, i: int) -> int:
        return popcount(self.adj[i])

    def average_degree(self) -> Fraction:
        if not self.triangles:
            return Fraction(0)
        return Fraction(2 * self.edge_count, self.n)


def triangle_share_graph(g: Graph) -> TriangleShareGraph:
    triangles = list_triangles(g)
    by_edge: Dict[Edge, int] = {}
    for i, tri in enumerate(triangles):
        for edge in tri.edges:
            by_edge[edge] = by_edge.get(edge, 0) | 1 << i
    adj = []
    for i, tri in enumerate(triangles):
        row = 0
        for edge in tri.edges:
            row |= by_edge[edge]
        adj.append(row & ~(1 << i))
    return TriangleShareGraph(triangles=triangles, adj=adj)


def spencer_lower_bound(n: int, r: int, d) -> float:
    """
    Lower bound ((r - 1) / r) * n / d^(1 / (r - 1)) on the independence
    number of an `r`-uniform hypergraph on `n` vertices with average degree
    `d`.

    Returns `n` when `d` is 0. An average degree in (0, 1) is treated as 1,
    where the bound is already the trivial (r - 1) n / r.
    """
    if r < 2 or n < 0 or d < 0:
        raise InvalidArgument("need r >= 2, n >= 0 and d >= 0")
    if d == 0:
        return float(n)
    d = max(float(d), 1.0)
    return (r - 1) / r * n / d ** (1 / (r - 1))


@dataclass
class CycleWitness:
    #: Cycle vertices in order; the closing edge joins the last to the first.
    cycle: Tuple[int, ...]
    #: An edge between two non-consecutive cycle vertices.
    chord: Edge

    def is_valid(self, g: Graph) -> bool:
        c = self.cycle
        if len(set(c)) != len(c) or len(c) < 4:
            return False
        if not all(
            g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))
        ):
            return False
        u, v = self.chord
        if u not in c or v not in c or not g.has_edge(u, v):
            return False
        gap = abs(c.index(u) - c.index(v))
        return gap not in (1, len(c) - 1)


def _chord(g: Graph, cycle: List[int]) -> Optional[Edge]:
    members = mask_of(cycle)
    length = len(cycle)
    for i, v in enumerate(cycle):
        skip = 1 << cycle[(i + 1) % length] | 1 << cycle[i - 1]
        others = g.adj[v] & members & ~skip
        if others:
            w = (others & -others).bit_length() - 1
            return (v, w) if v < w else (w, v)
    return None


def find_long_cycle_with_chord(
    g: Graph, k: int, *, budget: Optional[int] = None
) -> Optional[CycleWitness]:
    """
    Searches for a cycle on at least ``k + 1`` vertices that has a chord.

    Exhaustive over simple cycles (each rooted at its smallest vertex) until
    the node `budget` runs out. Graphs of average degree at least `k` always
    have one.
    """
    if k < 3:
        raise InvalidArgument("k must be at least 3", argument="k")
    budget = get_settings().cycle_node_budget if budget is None else budget
    nodes = 0
    adj = g.adj

    def extend(
        path: List[int], used: int, start: int
    ) -> Optional[CycleWitness]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        last = path[-1]
        if len(path) >= k + 1 and adj[last] >> start & 1:
            chord = _chord(g, path)
            if chord is not None:
                return CycleWitness(cycle=tuple(path), chord=chord)
        higher = ~((1 << (start + 1)) - 1)
        for w in iter_bits(adj[last] & ~used & higher):
            path.append(w)
            found = extend(path, used | 1 << w, start)
            path.pop()
            if found is not None:
                return found
        return None

    try:
        for start in range(g.n):
            found = extend([start], 1 << start, start)
            if found is not None:
                return found
    except _BudgetExceeded:
        log.warning(
            "chorded cycle search gave up after %d nodes (k=%d, n=%d)",
            budget,
            k,
            g.n,
        )
    return None


class _BudgetExceeded(Exception):
    pass


def private_neighbourhoods(g: Graph, clique: Sequence[int]) -> List[VertexSet]:
    """
    For each clique vertex a_i, the set X_i = N(a_i) minus the clique.
    """
    members = mask_of(clique)
    return [VertexSet(g.adj[a] & ~members) for a in clique]


@dataclass
class CliqueStep:
    """
    One vertex-deletion step of the clique induction.
    """

    clique: Tuple[int, ...]
    #: |X_i| for each clique vertex.
    private_sizes: List[int]
    #: True iff the X_i are pairwise disjoint.
    disjoint: bool
    #: The deleted vertex, the clique vertex with the smallest X_i.
    vertex: int
    #: t(vertex), measured.
    vertex_triangles: int
    #: e(clique - vertex) + (k - 1)/2 * |X_i|.
    vertex_bound: Fraction
    #: The smallest |X_i| is at most (n - |clique|) / |clique|.
    size_ok: bool
    #: f(n) - f(n - 1) for the quadratic bound f of the induction.
    increment: Fraction
    #: t(vertex) fits under the increment (strictly, for k = 3).
    step_holds: bool

    @property
    def measured_ok(self) -> bool:
        return self.vertex_triangles <= self.vertex_bound

    def as_dict(self) -> dict:
        return {
            "clique": list(self.clique),
            "private_sizes": self.private_sizes,
            "disjoint": self.disjoint,
            "vertex": self.vertex,
            "vertex_triangles": self.vertex_triangles,
            "vertex_bound": str(self.vertex_bound),
            "size_ok": self.size_ok,
            "increment": str(self.increment),
            "step_holds": self.step_holds,
        }


def induction_bound(n: int, k: int) -> Fraction:
    """
    n^2/8 + 3n for k = 3 and n^2/4 + 5n for k = 5.
    """
    if k == 3:
        return Fraction(n * n, 8) + 3 * n
    if k == 5:
        return Fraction(n * n, 4) + 5 * n
    raise InvalidArgument("only k = 3 and k = 5 are supported", argument="k")


def clique_deletion_step(
    g: Graph, clique: Sequence[int], k: int
) -> CliqueStep:
    """
    Measures the vertex-deletion step for a K4 (k = 3) or a K6 / K6 minus
    an edge (k = 5) in a graph free of the suspended k-path.
    """
    clique = tuple(clique)
    private = private_neighbourhoods(g, clique)
    masks = [x.members for x in private]
    disjoint = all(
        a & b == 0 for a, b in itertools.combinations(masks, 2)
    )
    sizes = [len(x) for x in private]
    i = min(range(len(clique)), key=lambda j: (sizes[j], clique[j]))
    vertex = clique[i]
    others = mask_of(clique) & ~(1 << vertex)
    vertex_bound = induced_edge_count(g, others) + Fraction(k - 1, 2) * sizes[i]
    increment = induction_bound(g.n, k) - induction_bound(g.n - 1, k)
    t_vertex = triangles_at(g, vertex)
    return CliqueStep(
        clique=clique,
        private_sizes=sizes,
        disjoint=disjoint,
        vertex=vertex,
        vertex_triangles=t_vertex,
        vertex_bound=vertex_bound,
        size_ok=sizes[i] * len(clique) <= g.n - len(clique),
        increment=increment,
        step_holds=(
            t_vertex < increment if k == 3 else t_vertex <= increment
        ),
    )


def nordhaus_stewart_bound(g: Graph) -> Fraction:
    if g.n == 0:
        return Fraction(0)
    e = g.edge_count
    return Fraction(e * (4 * e - g.n * g.n), 3 * g.n)


def triangle_summary(g: Graph) -> dict:
    """
    The counting identities for `g`, as reported by ``turanbench count``.
    """
    t = triangle_count(g)
    return {
        "n": g.n,
        "e": g.edge_count,
        "t": t,
        "sum_link_edges": sum(triangles_at(g, v) for v in range(g.n)),
        "p2": path_count(g, 2),
        "p3": path_count(g, 3),
        "max_degree": g.max_degree(),
        "nordhaus_stewart": str(nordhaus_stewart_bound(g)),
        "nordhaus_stewart_holds": t >= nordhaus_stewart_bound(g),
    }


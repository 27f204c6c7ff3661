import functools
from typing import Iterable, List, Sequence, Tuple

import networkx as nx
from hypothesis import strategies as st

from turanbench.graph import Edge, Graph
from turanbench.patterns import catalog_get, is_free
from turanbench.search.enumerate import enumerate_graphs


def graph(n: int, edges: Iterable[Edge]) -> Graph:
    return Graph.from_edges(n, list(edges))


def book(pages: int) -> Graph:
    """
    Spine (0, 1) with pages 2, 3, ...
    """
    edges = [(0, 1)]
    for page in range(2, pages + 2):
        edges += [(0, page), (1, page)]
    return graph(pages + 2, edges)


def cycle(n: int) -> Graph:
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def wheel(rim: int) -> Graph:
    spokes = [(0, i) for i in range(1, rim + 1)]
    rim_edges = [(i, i % rim + 1) for i in range(1, rim + 1)]
    return graph(rim + 1, spokes + rim_edges)


@functools.lru_cache(maxsize=None)
def all_graphs(n: int) -> Tuple[Graph, ...]:
    """
    One graph per isomorphism class on `n` vertices, cached across tests.
    """
    return tuple(enumerate_graphs(n))


def free_graphs(n: int, names: Sequence[str]) -> List[Graph]:
    patterns = [catalog_get(name) for name in names]
    return [g for g in all_graphs(n) if is_free(g, patterns)]


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(
        st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs))
    )
    return graph(n, [e for e, k in zip(pairs, keep) if k])

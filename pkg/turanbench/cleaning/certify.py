"""
Certificates for t(G) <= e(G)/2 and t(G) <= e(G).

A certificate is a trace of edge deletions that takes the input graph down
to a graph whose triangle count is settled directly. Every entry records
how many triangles (``delta_t``) and edges (``delta_e``) it removed, and the
law holds entry by entry: ``2 delta_t <= delta_e`` for the half law,
``delta_t <= delta_e`` for the unit law. :func:`replay_certificate`
re-applies a trace and checks all of it.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from turanbench.cleaning import require_free
from turanbench.cleaning.reductions import (
    CLOSURE_RETRY,
    REDUCTION_ORDER,
    REDUCTIONS,
)
from turanbench.errors import Counterexample, InvalidArgument
from turanbench.graph import (
    Edge,
    Graph,
    codegree,
    delete_edges,
    list_triangles,
    triangle_count,
)
from turanbench.graph6 import encode_graph6
from turanbench.patterns import catalog_get, find_embedding
from turanbench.structure import (
    ThresholdMode,
    classify_edges,
    is_book,
    triangle_blocks,
)
from turanbench.util import iter_bits, lowest_bit, mask_of

__all__ = (
    "TraceEntry",
    "Certificate",
    "certify_books",
    "certify_half",
    "certify_unit",
    "replay_certificate",
)

log = logging.getLogger(__name__)

LAWS = ("half", "unit")


def _tolerated(deviation: str) -> bool:
    return any(
        deviation.startswith(f"{rule} ({case}): ")
        for rule, case in CLOSURE_RETRY
    )


@dataclass
class TraceEntry:
    #: The rule that fired, such as ``"light-pair"`` or ``"k5minus"``.
    rule: str
    edges: List[Edge]
    delta_t: int
    delta_e: int
    witness: Optional[Tuple[int, ...]] = None
    #: ``printed`` or ``closure`` for guarded reductions.
    source: str = "rule"
    #: Which case of the rule matched.
    case: str = ""

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "edges": [list(e) for e in self.edges],
            "delta_t": self.delta_t,
            "delta_e": self.delta_e,
            "witness": None if self.witness is None else list(self.witness),
            "source": self.source,
            "case": self.case,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TraceEntry":
        witness = data.get("witness")
        return cls(
            rule=data["rule"],
            edges=[tuple(e) for e in data["edges"]],
            delta_t=data["delta_t"],
            delta_e=data["delta_e"],
            witness=None if witness is None else tuple(witness),
            source=data.get("source", "rule"),
            case=data.get("case", ""),
        )


@dataclass
class Certificate:
    #: ``book-decomposition``, ``light-pair-deletion`` or ``p5-reduction``.
    kind: str
    #: ``half`` or ``unit``.
    law: str
    graph6: str
    n: int
    t: int
    e: int
    trace: List[TraceEntry] = field(default_factory=list)
    #: Counts describing the graph left at the end of the trace.
    terminal: Dict[str, int] = field(default_factory=dict)
    #: Places where a configuration's own deletion set was not used.
    deviations: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        if self.law == "half":
            return 2 * self.t <= self.e
        return self.t <= self.e

    @property
    def conclusion(self) -> str:
        if self.law == "half":
            return f"t = {self.t} <= e/2 = {self.e}/2"
        return f"t = {self.t} <= e = {self.e}"

    @property
    def unexpected_deviations(self) -> List[str]:
        """
        Deviations from cases outside
        :data:`~turanbench.cleaning.reductions.CLOSURE_RETRY`.
        """
        return [d for d in self.deviations if not _tolerated(d)]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "law": self.law,
            "graph6": self.graph6,
            "n": self.n,
            "t": self.t,
            "e": self.e,
            "trace": [entry.to_dict() for entry in self.trace],
            "terminal": dict(self.terminal),
            "deviations": list(self.deviations),
            "conclusion": self.conclusion,
            "holds": self.holds,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        return cls(
            kind=data["kind"],
            law=data["law"],
            graph6=data["graph6"],
            n=data["n"],
            t=data["t"],
            e=data["e"],
            trace=[TraceEntry.from_dict(d) for d in data["trace"]],
            terminal=dict(data.get("terminal", {})),
            deviations=list(data.get("deviations", [])),
        )


def _entry_ok(law: str, delta_t: int, delta_e: int) -> bool:
    if law == "half":
        return 2 * delta_t <= delta_e
    return delta_t <= delta_e


def _start(g: Graph, kind: str, law: str) -> Certificate:
    return Certificate(
        kind=kind,
        law=law,
        graph6=encode_graph6(g),
        n=g.n,
        t=triangle_count(g),
        e=g.edge_count,
    )


def certify_books(g: Graph) -> Certificate:
    """
    Certifies t(G) <= e(G)/2 for a graph free of K4 and of the suspended
    3-path, whose triangle blocks are all books.

    :raises PreconditionViolation: `g` contains K4 or the suspended 3-path.
    :raises Counterexample: Some triangle block is not a book.
    """
    require_free(g, ["p3hat", "k4"])
    cert = _start(g, "book-decomposition", "half")
    decomposition = triangle_blocks(g, label=False)
    for block, t in zip(decomposition.blocks, decomposition.triangles):
        s = is_book(block, g)
        if s is None:
            raise Counterexample(
                "certify_books", cert.graph6, f"block {list(block)} is no book"
            )
        cert.trace.append(
            TraceEntry(
                rule="book",
                edges=list(block),
                delta_t=t,
                delta_e=len(block),
                case=f"book:{s}",
            )
        )
    if decomposition.uncovered:
        cert.trace.append(
            TraceEntry(
                rule="uncovered",
                edges=list(decomposition.uncovered),
                delta_t=0,
                delta_e=len(decomposition.uncovered),
            )
        )
    cert.terminal = {
        "blocks": len(decomposition.blocks),
        "uncovered": len(decomposition.uncovered),
    }
    return cert


def _no_triangle_edges(g: Graph) -> List[Edge]:
    return [(u, v) for u, v in g.edges() if codegree(g, u, v) == 0]


def _light_pair(g: Graph) -> Optional[Tuple[Edge, Edge]]:
    for tri in list_triangles(g):
        light = [e for e in tri.edges if codegree(g, *e) == 1]
        if len(light) >= 2:
            return light[0], light[1]
    return None


def certify_half(g: Graph) -> Certificate:
    """
    Certifies t(G) <= e(G)/2 for a graph free of the suspended 4-path, K4 and
    K_{1,2,2}.

    Edges in no triangle are dropped, and any triangle with two edges lying
    in no other triangle loses both. What is left has every edge in one or
    two triangles, exactly one single-triangle edge per triangle, and
    therefore exactly twice as many edges as triangles.

    :raises PreconditionViolation: A forbidden pattern is present.
    :raises Counterexample: The terminal graph does not have that shape.
    """
    require_free(g, ["p4hat", "k4", "k122"])
    cert = _start(g, "light-pair-deletion", "half")
    current = g
    while True:
        dropped = _no_triangle_edges(current)
        if dropped:
            cert.trace.append(
                TraceEntry("no-triangle", dropped, 0, len(dropped))
            )
            current = delete_edges(current, dropped)
            continue

        pair = _light_pair(current)
        if pair is None:
            break
        before = triangle_count(current)
        current = delete_edges(current, pair)
        delta_t = before - triangle_count(current)
        cert.trace.append(TraceEntry("light-pair", list(pair), delta_t, 2))
        if delta_t != 1:
            raise Counterexample(
                "certify_half:light-pair",
                cert.graph6,
                f"deleting {list(pair)} removed {delta_t} triangles",
            )

    split = classify_edges(current, ThresholdMode.UNIQUE_TRIANGLE)
    t = triangle_count(current)
    codegrees = [codegree(current, u, v) for u, v in current.edges()]
    cert.terminal = {
        "t": t,
        "e": current.edge_count,
        "light": split.light_count,
        "heavy": split.heavy_count,
        "max_codegree": max(codegrees, default=0),
    }
    if not (
        cert.terminal["max_codegree"] <= 2
        and split.light_count == t
        and split.light_count + 2 * split.heavy_count == 3 * t
        and 4 * t == 2 * current.edge_count
    ):
        raise Counterexample(
            "certify_half:terminal", encode_graph6(current), str(cert.terminal)
        )
    log.info("certified %s in %d steps", cert.conclusion, len(cert.trace))
    return cert


class _Reducer:
    """
    State of one :func:`certify_unit` run.
    """

    def __init__(self, g: Graph, cert: Certificate):
        self.g = g
        self.t = triangle_count(g)
        self.cert = cert

    def delta_t(self, edges: Sequence[Edge]) -> int:
        return self.t - triangle_count(delete_edges(self.g, edges))

    def fail(self, rule: str, detail: str):
        raise Counterexample(
            f"certify_unit:{rule}", encode_graph6(self.g), detail
        )

    def closure(self, vertices: Sequence[int]) -> List[Edge]:
        members = mask_of(vertices)
        return [
            (u, v)
            for u in iter_bits(members)
            for v in iter_bits(self.g.adj[u] & members)
            if u < v
        ]

    def settle(
        self,
        rule: str,
        witness: Optional[Tuple[int, ...]],
        printed: Optional[List[Edge]],
        vertices: Sequence[int],
        case: str = "",
        impossible: bool = False,
    ) -> TraceEntry:
        """
        Deletes the configuration's own edge set, which must remove no more
        triangles than edges. Only the cases in
        :data:`~turanbench.cleaning.reductions.CLOSURE_RETRY` may fall back
        to every edge induced on the configuration, and doing so is recorded
        as a deviation.
        """
        g = self.g
        if impossible or printed is None:
            self.fail(rule, f"excluded case {case!r} occurred")
        missing = [e for e in printed if not g.has_edge(*e)]
        if missing:
            self.fail(rule, f"case {case!r} deletes non-edges {missing}")

        source, edges = "printed", printed
        delta_t = self.delta_t(edges)
        if delta_t > len(edges):
            own = f"own set removes {delta_t} triangles with {len(edges)} edges"
            if (rule, case) not in CLOSURE_RETRY:
                self.fail(rule, f"case {case!r}: {own}")
            source, edges = "closure", self.closure(vertices)
            delta_t = self.delta_t(edges)
            if delta_t > len(edges):
                self.fail(
                    rule,
                    f"case {case!r}: {own}, closure removes {delta_t}"
                    f" triangles with {len(edges)} edges",
                )
            self.deviate(f"{rule} ({case}): {own}, used closure instead")

        return TraceEntry(
            rule=rule,
            edges=sorted(edges),
            delta_t=delta_t,
            delta_e=len(edges),
            witness=witness,
            source=source,
            case=case,
        )

    def deviate(self, message: str):
        log.warning("%s", message)
        self.cert.deviations.append(message)

    def configuration(self) -> Optional[TraceEntry]:
        for name in REDUCTION_ORDER:
            p = catalog_get(name)
            witness = find_embedding(self.g, p)
            if witness is None:
                continue
            proposal = REDUCTIONS[name](self.g, p, witness)
            return self.settle(
                name,
                witness,
                proposal.printed,
                proposal.vertices,
                proposal.case,
                proposal.impossible,
            )
        return None

    def low_codegree(self) -> Optional[TraceEntry]:
        g = self.g
        edges = [(u, v) for u, v in g.edges() if codegree(g, u, v) <= 1]
        if not edges:
            return None
        return TraceEntry(
            "low-codegree", edges, self.delta_t(edges), len(edges)
        )

    def double_edge_link(self) -> Optional[TraceEntry]:
        # An edge ac whose common neighborhood holds two disjoint edges.
        g = self.g
        for a, c in g.edges():
            common = g.adj[a] & g.adj[c]
            first = _first_edge(g, common)
            if first is None:
                continue
            b, x = first
            second = _first_edge(g, common & ~(1 << b) & ~(1 << x))
            if second is None:
                continue
            y, w = second
            printed = sorted(
                (min(s, o), max(s, o)) for s in (a, c) for o in (b, x, y, w)
            )
            return self.settle(
                "double-edge-link",
                (a, c, b, x, y, w),
                printed,
                (a, c, b, x, y, w),
            )
        return None

    def light_heavy(self) -> Optional[TraceEntry]:
        g = self.g
        for tri in list_triangles(g):
            for a, b, c in (
                (tri.a, tri.b, tri.c),
                (tri.b, tri.a, tri.c),
                (tri.c, tri.a, tri.b),
            ):
                if codegree(g, a, b) != 2 or codegree(g, a, c) != 2:
                    continue
                x = lowest_bit(g.adj[a] & g.adj[b] & g.adj[c])
                if x < 0:
                    self.fail(
                        "light-heavy", f"no vertex sees all of {a}, {b}, {c}"
                    )
                if codegree(g, a, x) == 2:
                    printed, case = [(a, b), (a, x), (a, c)], "ax-light"
                else:
                    printed, case = [(a, b), (a, c), (x, b), (x, c)], "ax-heavy"
                printed = sorted((min(e), max(e)) for e in printed)
                return self.settle(
                    "light-heavy", (a, b, c, x), printed, (a, b, c, x), case
                )
        return None

    def step(self) -> TraceEntry:
        # Every later rule assumes each edge lies in two or more triangles.
        entry = (
            self.low_codegree()
            or self.configuration()
            or self.double_edge_link()
            or self.light_heavy()
        )
        if entry is None:
            self.fail("stuck", "no rule applies")
        return entry


def _first_edge(g: Graph, within: int) -> Optional[Edge]:
    for u in iter_bits(within):
        rest = g.adj[u] & within & ~((1 << (u + 1)) - 1)
        if rest:
            return u, lowest_bit(rest)
    return None


def certify_unit(g: Graph) -> Certificate:
    """
    Certifies t(G) <= e(G) for a graph free of K6 minus an edge and of the
    suspended 5-path.

    Each round applies the first rule that fires: dropping edges of codegree
    at most one, the guarded reductions in
    :data:`~turanbench.cleaning.reductions.REDUCTION_ORDER`, the double-edge
    link configuration and the light/heavy rule for codegree-2 edges. Each
    round must remove at most as many triangles as edges.

    :raises PreconditionViolation: A forbidden pattern is present.
    :raises Counterexample: A round removes more triangles than edges, a
                            case the reductions exclude occurs, or no rule
                            applies.
    """
    require_free(g, ["k6minus", "p5hat"])
    cert = _start(g, "p5-reduction", "unit")
    current = g
    while triangle_count(current) > 0:
        reducer = _Reducer(current, cert)
        entry = reducer.step()
        log.debug(
            "%s via %s: %s, dt=%d de=%d",
            entry.rule,
            entry.source,
            entry.edges,
            entry.delta_t,
            entry.delta_e,
        )
        cert.trace.append(entry)
        current = delete_edges(current, entry.edges)
    cert.terminal = {"t": 0, "e": current.edge_count}
    log.info("certified %s in %d steps", cert.conclusion, len(cert.trace))
    return cert


def replay_certificate(g: Graph, certificate: Certificate) -> bool:
    """
    Re-applies the trace of `certificate` to `g`, checking every recorded
    ``delta_t`` and ``delta_e``, the per-entry law and the conclusion.

    :raises InvalidArgument: The certificate belongs to another graph.
    :raises Counterexample: Any check fails.
    """
    if certificate.law not in LAWS:
        raise InvalidArgument(f"unknown law {certificate.law!r}")
    if encode_graph6(g) != certificate.graph6:
        raise InvalidArgument("certificate was issued for a different graph")

    def fail(detail: str):
        raise Counterexample(
            f"replay:{certificate.kind}", certificate.graph6, detail
        )

    if (triangle_count(g), g.edge_count) != (certificate.t, certificate.e):
        fail("recorded t or e differ from the graph")

    current = g
    t = certificate.t
    for i, entry in enumerate(certificate.trace):
        current = delete_edges(current, entry.edges)
        t_after = triangle_count(current)
        if (t - t_after, len(set(entry.edges))) != (
            entry.delta_t,
            entry.delta_e,
        ):
            fail(f"entry {i} ({entry.rule}) does not reproduce")
        if not _entry_ok(certificate.law, entry.delta_t, entry.delta_e):
            fail(f"entry {i} ({entry.rule}) breaks the {certificate.law} law")
        t = t_after

    if certificate.law == "half" and 2 * t > current.edge_count:
        fail("terminal graph has more than e/2 triangles")
    if certificate.law == "unit" and t > current.edge_count:
        fail("terminal graph has more than e triangles")
    if not certificate.holds:
        fail(certificate.conclusion)
    return True

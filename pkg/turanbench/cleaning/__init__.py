import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from turanbench.errors import Counterexample, PreconditionViolation
from turanbench.graph import (
    Edge,
    Graph,
    codegree,
    delete_edges,
    triangle_count,
)
from turanbench.graph6 import encode_graph6
from turanbench.patterns import (
    Pattern,
    catalog_get,
    find_embedding,
    find_free_violation,
)
from turanbench.structure import is_isolated_block

__all__ = (
    "CleaningStep",
    "CleaningReport",
    "CLEANING_ORDER",
    "clean_for_p4hat",
    "require_free",
)

log = logging.getLogger(__name__)


def require_free(g: Graph, names: Sequence[str]):
    """
    Raises :class:`~turanbench.errors.PreconditionViolation` with a witness
    if `g` contains any of the named patterns, checked in the given order.
    """
    violation = find_free_violation(g, [catalog_get(name) for name in names])
    if violation is not None:
        pattern, witness = violation
        raise PreconditionViolation(pattern.name, witness)


@dataclass
class CleaningStep:
    """
    A single deletion made by the cleaning pipeline.
    """

    #: Which of the six rules made the deletion, 1-based.
    step: int
    #: Pattern whose copy was found.
    pattern: str
    #: The witness embedding, in the pattern's vertex order.
    witness: Tuple[int, ...]
    #: Deleted edges.
    edges: List[Edge]
    t_before: int
    t_after: int
    #: The copy's edges made up a whole triangle block when it was found.
    isolated_block: bool = False

    @property
    def triangles_lost(self) -> int:
        return self.t_before - self.t_after

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "pattern": self.pattern,
            "witness": list(self.witness),
            "edges": [list(e) for e in self.edges],
            "t_before": self.t_before,
            "t_after": self.t_after,
            "isolated_block": self.isolated_block,
        }


@dataclass
class CleaningReport:
    target: str
    n: int
    e_before: int
    t_before: int
    e_after: int = 0
    t_after: int = 0
    steps: List[CleaningStep] = field(default_factory=list)

    @property
    def edges_deleted(self) -> int:
        return sum(len(step.edges) for step in self.steps)

    @property
    def triangles_lost(self) -> int:
        return sum(step.triangles_lost for step in self.steps)

    def counts(self) -> Dict[str, int]:
        """
        Number of deletions made by each pattern.
        """
        result: Dict[str, int] = {}
        for step in self.steps:
            result[step.pattern] = result.get(step.pattern, 0) + 1
        return result

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "steps": [step.to_dict() for step in self.steps],
            "totals": {
                "n": self.n,
                "e_before": self.e_before,
                "e_after": self.e_after,
                "t_before": self.t_before,
                "t_after": self.t_after,
                "edges_deleted": self.edges_deleted,
                "triangles_lost": self.triangles_lost,
                "per_pattern": self.counts(),
            },
        }


def _smallest_image_edge(g: Graph, p: Pattern, witness) -> List[Edge]:
    return p.image_edges(witness)[:1]


def _k4_edge(g: Graph, p: Pattern, witness) -> List[Edge]:
    a, b, c, _ = sorted(witness)
    for edge in ((a, b), (b, c)):
        if codegree(g, *edge) == 2:
            return [edge]
    raise Counterexample(
        "clean_for_p4hat:k4",
        encode_graph6(g),
        f"neither {a}{b} nor {b}{c} of the K4 on {sorted(witness)} has"
        f" codegree 2",
    )


def _smallest_outer_edge(g: Graph, p: Pattern, witness) -> List[Edge]:
    return p.image_edges(witness, "outer")[:1]


def _outer_codegree_one(g: Graph, p: Pattern, witness) -> List[Edge]:
    for edge in p.image_edges(witness, "outer"):
        if codegree(g, *edge) == 1:
            return [edge]
    raise Counterexample(
        "clean_for_p4hat:k122",
        encode_graph6(g),
        f"no outer edge of codegree 1 in the K_{{1,2,2}} on {list(witness)}",
    )


#: The rules, in the order they run: pattern name and edge chooser.
CLEANING_ORDER: List[
    Tuple[str, Callable[[Graph, Pattern, Tuple[int, ...]], List[Edge]]]
] = [
    ("k5", _smallest_image_edge),
    ("k5minus", _smallest_image_edge),
    ("k4", _k4_edge),
    ("k222", _smallest_image_edge),
    ("q32", _smallest_outer_edge),
    ("k122", _outer_codegree_one),
]


def clean_for_p4hat(
    g: Graph, *, rules: Optional[int] = None
) -> Tuple[Graph, CleaningReport]:
    """
    Removes every copy of K5, K5 minus an edge, K4, K_{2,2,2}, Q_{3,2} and
    K_{1,2,2} from a graph free of the suspended 4-path, in that order.

    Each rule deletes one edge per copy and rescans after every deletion
    until its pattern is gone; the next rule then starts.

    :param rules: Only run the first `rules` rules.
    :raises PreconditionViolation: `g` contains the suspended 4-path.
    :raises Counterexample: A copy offered no edge of the required
                            codegree, or a cleaned pattern survived.
    """
    require_free(g, ["p4hat"])
    order = CLEANING_ORDER if rules is None else CLEANING_ORDER[:rules]
    report = CleaningReport(
        target="p4hat",
        n=g.n,
        e_before=g.edge_count,
        t_before=triangle_count(g),
    )

    current = g
    t = report.t_before
    for index, (name, choose) in enumerate(order, start=1):
        p = catalog_get(name)
        while True:
            witness = find_embedding(current, p)
            if witness is None:
                break
            edges = choose(current, p, witness)
            isolated = is_isolated_block(current, witness)
            current = delete_edges(current, edges)
            t_after = triangle_count(current)
            step = CleaningStep(
                step=index,
                pattern=name,
                witness=witness,
                edges=edges,
                t_before=t,
                t_after=t_after,
                isolated_block=isolated,
            )
            log.debug(
                "step %d: %s at %s, deleted %s, t %d -> %d",
                index,
                name,
                list(witness),
                edges,
                t,
                t_after,
            )
            report.steps.append(step)
            t = t_after

        cleaned = ["p4hat"] + [rule for rule, _ in order[:index]]
        violation = find_free_violation(
            current, [catalog_get(rule) for rule in cleaned]
        )
        if violation is not None:
            raise Counterexample(
                f"clean_for_p4hat:{name}",
                encode_graph6(current),
                f"{violation[0].name} survived at {list(violation[1])}",
            )

    report.e_after = current.edge_count
    report.t_after = t
    log.info(
        "cleaned %d copies, %d edges, %d triangles lost",
        len(report.steps),
        report.edges_deleted,
        report.triangles_lost,
    )
    return current, report

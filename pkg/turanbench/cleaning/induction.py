"""
Vertex-deletion induction on cliques.

In a graph free of the suspended 3-path every K4 has pairwise disjoint
private neighbourhoods, and the same holds for K6 and K6 minus an edge in a
graph free of the suspended 5-path. Deleting the clique vertex with the
smallest private neighbourhood costs few triangles; repeating until no such
clique is left is the induction these reports replay.
"""

import logging
from dataclasses import dataclass, field
from typing import List

from turanbench.cleaning import require_free
from turanbench.errors import Counterexample, InvalidArgument
from turanbench.graph import Graph, delete_vertex, triangle_count
from turanbench.graph6 import encode_graph6
from turanbench.patterns import catalog_get, find_free_violation
from turanbench.structure import (
    CliqueStep,
    clique_deletion_step,
    induction_bound,
)

__all__ = ("InductionReport", "clique_induction_report")

log = logging.getLogger(__name__)

_SETUP = {
    3: ("p3hat", ["k4"]),
    5: ("p5hat", ["k6", "k6minus"]),
}


@dataclass
class InductionReport:
    k: int
    n: int
    t: int
    steps: List[CliqueStep] = field(default_factory=list)
    #: Vertex count and triangle count of the clique-free remainder.
    remaining_n: int = 0
    remaining_t: int = 0

    @property
    def bound_holds(self) -> bool:
        """
        The quadratic bound on the input, strict for k = 3.
        """
        bound = induction_bound(self.n, self.k)
        return self.t < bound if self.k == 3 else self.t <= bound

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "t": self.t,
            "bound": str(induction_bound(self.n, self.k)),
            "bound_holds": self.bound_holds,
            "steps": [step.as_dict() for step in self.steps],
            "remaining_n": self.remaining_n,
            "remaining_t": self.remaining_t,
        }


def clique_induction_report(g: Graph, k: int) -> InductionReport:
    """
    Repeatedly deletes a clique vertex with the smallest private
    neighbourhood until no K4 (k = 3) or no K6 / K6 minus an edge (k = 5)
    remains, checking each step.

    :raises PreconditionViolation: `g` contains the suspended k-path.
    :raises Counterexample: Private neighbourhoods overlap, or one of the
                            measured bounds of a step fails.
    """
    if k not in _SETUP:
        raise InvalidArgument("k must be 3 or 5", argument="k")
    hat, cliques = _SETUP[k]
    require_free(g, [hat])
    patterns = [catalog_get(name) for name in cliques]

    report = InductionReport(k=k, n=g.n, t=triangle_count(g))
    current = g
    while True:
        violation = find_free_violation(current, patterns)
        if violation is None:
            break
        _, witness = violation
        step = clique_deletion_step(current, witness, k)
        if not (step.disjoint and step.size_ok and step.measured_ok):
            raise Counterexample(
                f"clique_induction:k={k}",
                encode_graph6(current),
                str(step.as_dict()),
            )
        if not step.step_holds:
            log.debug(
                "n=%d: t(%d)=%d exceeds the increment %s",
                current.n,
                step.vertex,
                step.vertex_triangles,
                step.increment,
            )
        report.steps.append(step)
        current = delete_vertex(current, step.vertex)

    report.remaining_n = current.n
    report.remaining_t = triangle_count(current)
    return report

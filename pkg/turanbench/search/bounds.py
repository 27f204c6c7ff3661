"""
Closed-form bounds checked against computed records.

Supported forbidden sets are a single suspended path ``suspension:path:k``,
a single ``K_{1,a,b}`` (``k122``, ``complete-multipartite:1,a,b`` or
``suspension:complete-bipartite:a,b``) and a single suspended even cycle
``suspension:cycle:2k``. Only the suspended paths have closed-form upper
bounds; the other two get lower evidence from ``hn``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from turanbench.constructions import (
    ConstructionSpec,
    Family,
    formula_triangles,
    p3hat_lower_example,
)
from turanbench.errors import InvalidArgument, UnsupportedBound
from turanbench.graph import triangle_count
from turanbench.graph6 import decode_graph6
from turanbench.search.extremal import ExtremalRecord

__all__ = (
    "BoundCheck",
    "closed_form_upper",
    "construction_value",
    "neighbourhood_bound",
    "verify_bounds",
)

log = logging.getLogger(__name__)


@dataclass
class BoundCheck:
    name: str
    holds: bool
    #: How far the record is from violating the bound. Zero means attained.
    slack: Fraction
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "slack": str(self.slack),
            "detail": self.detail,
        }


def _ints(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        return ()


def _classify(forbidden: Sequence[str]) -> Tuple[str, Tuple[int, ...]]:
    """
    Returns ``("path", (k,))``, ``("k1ab", (a, b))`` or ``("cycle", (2k,))``.
    """
    if len(forbidden) == 1:
        name = forbidden[0]
        if name == "k122":
            return "k1ab", (2, 2)
        if name.startswith("suspension:path:"):
            params = _ints(name[len("suspension:path:"):])
            if len(params) == 1 and params[0] >= 3:
                return "path", params
        if name.startswith("suspension:cycle:"):
            params = _ints(name[len("suspension:cycle:"):])
            if len(params) == 1 and params[0] >= 4 and params[0] % 2 == 0:
                return "cycle", params
        if name.startswith("suspension:complete-bipartite:"):
            params = _ints(name[len("suspension:complete-bipartite:"):])
            if len(params) == 2:
                return "k1ab", tuple(sorted(params))
        if name.startswith("complete-multipartite:"):
            params = _ints(name[len("complete-multipartite:"):])
            if len(params) == 3 and 1 in params:
                rest = list(params)
                rest.remove(1)
                return "k1ab", tuple(sorted(rest))
    raise UnsupportedBound(forbidden)


def _inner_name(kind: str, params: Tuple[int, ...]) -> str:
    if kind == "path":
        return f"path:{params[0]}"
    if kind == "cycle":
        return f"cycle:{params[0]}"
    return f"complete-bipartite:{params[0]},{params[1]}"


def neighbourhood_bound(n: int, ex_h: int) -> Fraction:
    """
    n ex(n, H) / 3, which bounds the triangles of any graph on `n` vertices
    free of the suspension of H, given ex(n, H) = `ex_h`.
    """
    return Fraction(n * ex_h, 3)


def construction_value(n: int, forbidden: Sequence[str]) -> Optional[int]:
    """
    The triangle count of the best known construction on `n` vertices, or
    None when no construction applies at this `n`.
    """
    kind, params = _classify(forbidden)
    if kind == "path":
        k = params[0]
        m = (k - 1) // 2
        best = None
        if n and n % (4 * m) == 0:
            best = formula_triangles(ConstructionSpec(Family.FNK, n, k))
        if k == 3:
            small = triangle_count(p3hat_lower_example(n))
            best = small if best is None else max(best, small)
        return best
    if kind == "k1ab" and params[0] < 2:
        # hn contains every book, so it says nothing for K_{1,1,b}.
        return None
    if n and n % 4 == 0:
        return formula_triangles(ConstructionSpec(Family.HN, n))
    return None


def _upper_bounds(
    n: int, kind: str, params: Tuple[int, ...]
) -> List[Tuple[str, Fraction, bool]]:
    # (name, bound, strict)
    if kind != "path":
        return []
    k = params[0]
    bounds = []
    if n >= k:
        bounds.append(
            (
                "pkhat-upper",
                Fraction((k - 1) * n * n + (k - 1) ** 2 * n, 12),
                False,
            )
        )
    if k == 3:
        bounds.append(("p3hat-induction", Fraction(n * n, 8) + 3 * n, True))
    elif k == 5:
        bounds.append(("p5hat-induction", Fraction(n * n, 4) + 5 * n, False))
    return bounds


def closed_form_upper(
    n: int, forbidden: Sequence[str]
) -> Optional[Fraction]:
    """
    The smallest closed-form upper bound known at `n`, or None.
    """
    kind, params = _classify(forbidden)
    bounds = [bound for _, bound, _ in _upper_bounds(n, kind, params)]
    return min(bounds) if bounds else None


def _check(name: str, holds: bool, slack: Fraction, detail: str):
    if holds and slack == 0:
        log.warning("%s attained with zero slack: %s", name, detail)
    return BoundCheck(name=name, holds=holds, slack=slack, detail=detail)


def verify_bounds(
    record: ExtremalRecord, *, edge_record: Optional[ExtremalRecord] = None
) -> List[BoundCheck]:
    """
    Evaluates every bound that applies to `record`.

    :param edge_record: An edge-objective record for the unsuspended pattern
                        at the same n. When given, the neighbourhood bound
                        is checked too.
    :raises UnsupportedBound: The forbidden set or the objective has no
                              known bounds.
    """
    if record.objective != "triangles":
        raise UnsupportedBound(record.forbidden)
    kind, params = _classify(record.forbidden)
    n, value = record.n, record.value
    checks = []

    for name, bound, strict in _upper_bounds(n, kind, params):
        holds = value < bound if strict else value <= bound
        relation = "<" if strict else "<="
        checks.append(
            _check(name, holds, bound - value, f"{value} {relation} {bound}")
        )

    if kind == "path":
        k = params[0]
        witness = decode_graph6(record.witness)
        t, e = triangle_count(witness), witness.edge_count
        bound = Fraction((k - 1) * e, 3)
        checks.append(
            _check("triangle-edge", t <= bound, bound - t, f"{t} <= {bound}")
        )

    lower = construction_value(n, record.forbidden)
    if lower is not None and record.method == "exhaustive":
        checks.append(
            _check(
                "construction-lower",
                value >= lower,
                Fraction(value - lower),
                f"{value} >= {lower}",
            )
        )

    if edge_record is not None:
        inner = _inner_name(kind, params)
        if (
            edge_record.objective != "edges"
            or edge_record.n != n
            or edge_record.forbidden != (inner,)
        ):
            raise InvalidArgument(
                f"edge record must be the edge objective for {inner} at n={n}",
                argument="edge_record",
            )
        bound = neighbourhood_bound(n, edge_record.value)
        checks.append(
            _check(
                "neighbourhood",
                value <= bound,
                bound - value,
                f"{value} <= {bound}",
            )
        )

    for check in checks:
        log.debug("%s: holds=%s slack=%s", check.name, check.holds, check.slack)
    return checks

"""
Exceptions raised by turanbench.

Every error carries its context as attributes so callers (and the CLI) can
render a witness or dump a graph without parsing messages.
"""

from typing import Optional, Sequence, Tuple

__all__ = (
    "TuranBenchError",
    "InvalidArgument",
    "PreconditionViolation",
    "Counterexample",
    "UnsupportedBound",
    "CorruptRecord",
)


class TuranBenchError(Exception):
    """
    Base class for all turanbench errors.
    """

    @property
    def error_msg(self) -> str:
        return "Unknown Error"

    def __repr__(self):
        return f"<{self.__class__.__name__}(err={self.error_msg!r})>"

    __str__ = __repr__


class InvalidArgument(TuranBenchError, ValueError):
    """
    Raised when an operation is called with arguments outside its domain.
    """

    def __init__(self, message: str, *, argument: Optional[str] = None):
        super().__init__(message)
        #: A human-readable description of the problem.
        self.message = message
        #: The name of the offending argument, if known.
        self.argument = argument

    @property
    def error_msg(self) -> str:
        return self.message

    def __repr__(self):
        return (
            f"<{self.__class__.__name__}(argument={self.argument!r},"
            f" err={self.error_msg!r})>"
        )

    __str__ = __repr__


class PreconditionViolation(TuranBenchError):
    """
    Raised when an input graph contains a pattern it was required to be free
    of.
    """

    def __init__(self, pattern: str, witness: Sequence[int]):
        super().__init__()
        #: Name of the contained pattern.
        self.pattern = pattern
        #: Host vertices in the pattern's vertex order.
        self.witness: Tuple[int, ...] = tuple(witness)

    @property
    def error_msg(self) -> str:
        return f"graph contains {self.pattern} at {list(self.witness)}"

    def __repr__(self):
        return (
            f"<{self.__class__.__name__}(pattern={self.pattern!r},"
            f" witness={list(self.witness)!r})>"
        )

    __str__ = __repr__


class Counterexample(TuranBenchError):
    """
    Raised when a structural claim that must always hold fails on a concrete
    graph.

    This should never happen. When it does, `graph6` holds the offending graph
    so it can be dumped and inspected.
    """

    def __init__(self, stage: str, graph6: str, detail: str = ""):
        super().__init__()
        #: The check that failed, such as ``"certify_half:terminal"``.
        self.stage = stage
        #: The graph the check failed on, graph6 encoded.
        self.graph6 = graph6
        #: Free-form description of the failing quantities.
        self.detail = detail

    @property
    def error_msg(self) -> str:
        return f"{self.stage} failed on {self.graph6}: {self.detail}"

    def __repr__(self):
        return (
            f"<{self.__class__.__name__}(stage={self.stage!r},"
            f" graph6={self.graph6!r}, detail={self.detail!r})>"
        )

    __str__ = __repr__


class UnsupportedBound(TuranBenchError):
    """
    Raised when no closed-form bound is known for a forbidden set.
    """

    def __init__(self, forbidden: Sequence[str]):
        super().__init__()
        self.forbidden = tuple(forbidden)

    @property
    def error_msg(self) -> str:
        return f"no bound known for forbidden set {list(self.forbidden)}"

    def __repr__(self):
        return (
            f"<{self.__class__.__name__}(forbidden={list(self.forbidden)!r})>"
        )

    __str__ = __repr__


class CorruptRecord(TuranBenchError):
    """
    Raised when a row of the results database cannot be decoded.
    """

    def __init__(self, line_no: int, reason: str):
        super().__init__()
        self.line_no = line_no
        self.reason = reason

    @property
    def error_msg(self) -> str:
        return f"line {self.line_no}: {self.reason}"

    def __repr__(self):
        return (
            f"<{self.__class__.__name__}(line_no={self.line_no},"
            f" err={self.error_msg!r})>"
        )

    __str__ = __repr__

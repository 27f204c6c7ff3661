"""
Process-wide settings.

Defaults can be overridden from the environment (``TURANBENCH_*`` variables)
or explicitly with :func:`configure`, which is what the CLI's global flags do.
"""

import dataclasses
import os
from dataclasses import dataclass
from typing import Optional

from turanbench.errors import InvalidArgument

__all__ = ("Settings", "get_settings", "configure")

#: Graphs wider than this are never accepted, whatever the settings say.
HARD_VERTEX_LIMIT = 256


@dataclass(frozen=True)
class Settings:
    #: Largest vertex count accepted by :class:`~turanbench.graph.Graph`.
    max_vertices: int = 64
    #: Largest n for which isomorph-free enumeration is attempted.
    enumeration_cap: int = 11
    #: Above this many triangles the packing solver falls back to greedy.
    exact_packing_limit: int = 10_000
    #: DFS node budget for the chorded cycle finder.
    cycle_node_budget: int = 2_000_000
    #: Worker processes used by exhaustive search.
    threads: int = 1
    #: Base seed for local search restarts.
    seed: int = 0x5EED
    #: Default results database (JSON lines).
    db_path: str = "turanbench.jsonl"
    #: Slack used when floating point bounds are compared to integers.
    float_slack: float = 1e-9

    def __post_init__(self):
        if not 1 <= self.max_vertices <= HARD_VERTEX_LIMIT:
            raise InvalidArgument(
                f"max_vertices must be in [1, {HARD_VERTEX_LIMIT}]",
                argument="max_vertices",
            )
        if self.threads < 1:
            raise InvalidArgument(
                "threads must be at least 1", argument="threads"
            )

    @classmethod
    def from_env(cls, environ=None) -> "Settings":
        """
        Build settings from ``TURANBENCH_*`` environment variables, falling
        back to the defaults for anything unset.
        """
        environ = os.environ if environ is None else environ
        overrides = {}
        for key, name, cast in (
            ("TURANBENCH_DB", "db_path", str),
            ("TURANBENCH_MAX_VERTICES", "max_vertices", int),
            ("TURANBENCH_THREADS", "threads", int),
            ("TURANBENCH_SEED", "seed", lambda v: int(v, 0)),
        ):
            value = environ.get(key)
            if value is None or value == "":
                continue
            try:
                overrides[name] = cast(value)
            except ValueError:
                raise InvalidArgument(
                    f"{key}={value!r} is not valid", argument=key
                ) from None
        return cls(**overrides)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Returns the active settings, reading the environment on first use.
    """
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def configure(**overrides) -> Settings:
    """
    Replace the active settings with a copy that has `overrides` applied.

    Passing ``None`` for a value leaves it unchanged.
    """
    global _settings
    current = get_settings()
    overrides = {k: v for k, v in overrides.items() if v is not None}
    _settings = dataclasses.replace(current, **overrides)
    return _settings

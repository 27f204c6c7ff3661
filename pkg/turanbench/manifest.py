"""
Run manifests.

Every file the command line writes is accompanied by a manifest describing
how it was made: ``out.g6`` gets ``out.g6.manifest.json``, and JSON outputs
also carry it under their ``manifest`` key.
"""

import datetime
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

from turanbench import __version__
from turanbench.config import get_settings

__all__ = ("RunManifest", "file_digest", "manifest_path")

SUFFIX = ".manifest.json"


def file_digest(path: Union[str, Path]) -> str:
    """
    SHA-256 of a file's contents, hex encoded.
    """
    h = hashlib.sha256()
    with open(path, "rb") as source:
        for chunk in iter(lambda: source.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest_path(output: Union[str, Path]) -> Path:
    output = Path(output)
    return output.with_name(output.name + SUFFIX)


@dataclass
class RunManifest:
    #: The command line, without the program name.
    argv: List[str]
    version: str = __version__
    #: The active :class:`~turanbench.config.Settings`.
    settings: Dict[str, object] = field(default_factory=dict)
    #: Input path to SHA-256 digest.
    inputs: Dict[str, str] = field(default_factory=dict)
    #: UTC time of the run, ISO 8601.
    timestamp: str = ""

    @classmethod
    def capture(
        cls,
        argv: Iterable[str],
        inputs: Iterable[Union[str, Path]] = (),
        *,
        now: Optional[datetime.datetime] = None,
    ) -> "RunManifest":
        now = now or datetime.datetime.now(datetime.timezone.utc)
        return cls(
            argv=list(argv),
            settings=get_settings().as_dict(),
            inputs={str(p): file_digest(p) for p in inputs},
            timestamp=now.isoformat(),
        )

    def as_dict(self) -> dict:
        return {
            "argv": list(self.argv),
            "version": self.version,
            "settings": dict(self.settings),
            "inputs": dict(self.inputs),
            "timestamp": self.timestamp,
        }

    def write_beside(self, output: Union[str, Path]) -> Path:
        """
        Writes the manifest next to `output` and returns its path.
        """
        path = manifest_path(output)
        path.write_text(
            json.dumps(self.as_dict(), indent=4, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        return path

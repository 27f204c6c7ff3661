import datetime
import hashlib
import json

from turanbench import __version__
from turanbench.config import configure, get_settings
from turanbench.manifest import RunManifest, file_digest, manifest_path

NOW = datetime.datetime(2024, 5, 1, 12, 30, tzinfo=datetime.timezone.utc)


def test_file_digest(tmp_path):
    path = tmp_path / "in.g6"
    path.write_bytes(b"C~\n")
    assert file_digest(path) == hashlib.sha256(b"C~\n").hexdigest()


def test_manifest_path(tmp_path):
    assert manifest_path(tmp_path / "out.g6") == (
        tmp_path / "out.g6.manifest.json"
    )
    assert manifest_path("report.csv").name == "report.csv.manifest.json"


def test_capture(tmp_path):
    configure(threads=3)
    source = tmp_path / "in.g6"
    source.write_text("C~\n")
    manifest = RunManifest.capture(["clean", "--in=in.g6"], [source], now=NOW)
    assert manifest.argv == ["clean", "--in=in.g6"]
    assert manifest.version == __version__
    assert manifest.settings == get_settings().as_dict()
    assert manifest.settings["threads"] == 3
    assert manifest.inputs == {str(source): file_digest(source)}
    assert manifest.timestamp == "2024-05-01T12:30:00+00:00"


def test_capture_defaults_to_now():
    manifest = RunManifest.capture([])
    stamp = datetime.datetime.fromisoformat(manifest.timestamp)
    assert stamp.tzinfo is not None
    assert manifest.inputs == {}


def test_write_beside(tmp_path):
    out = tmp_path / "out.g6"
    out.write_text("C~\n")
    manifest = RunManifest.capture(["construct"], now=NOW)
    path = manifest.write_beside(out)
    assert path == manifest_path(out)
    assert json.loads(path.read_text()) == manifest.as_dict()

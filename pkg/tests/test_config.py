import pytest

from turanbench import config
from turanbench.config import Settings, configure, get_settings
from turanbench.errors import InvalidArgument


def test_defaults():
    settings = get_settings()
    assert settings.max_vertices == 64
    assert settings.threads == 1
    assert settings.db_path == "turanbench.jsonl"


def test_from_env():
    settings = Settings.from_env(
        {
            "TURANBENCH_DB": "/tmp/results.jsonl",
            "TURANBENCH_MAX_VERTICES": "128",
            "TURANBENCH_THREADS": "4",
            "TURANBENCH_SEED": "0x10",
            "TURANBENCH_UNRELATED": "1",
        }
    )
    assert settings.db_path == "/tmp/results.jsonl"
    assert settings.max_vertices == 128
    assert settings.threads == 4
    assert settings.seed == 16


def test_from_env_ignores_empty():
    assert Settings.from_env({"TURANBENCH_THREADS": ""}) == Settings()


@pytest.mark.parametrize(
    "environ",
    [
        {"TURANBENCH_THREADS": "many"},
        {"TURANBENCH_THREADS": "0"},
        {"TURANBENCH_MAX_VERTICES": "1000"},
    ],
)
def test_from_env_rejects(environ):
    with pytest.raises(InvalidArgument):
        Settings.from_env(environ)


def test_first_use_reads_environment(monkeypatch):
    monkeypatch.setattr(config, "_settings", None)
    monkeypatch.setenv("TURANBENCH_THREADS", "3")
    assert get_settings().threads == 3


def test_configure():
    assert configure(threads=2, max_vertices=None).threads == 2
    assert get_settings().threads == 2
    assert get_settings().max_vertices == 64

    with pytest.raises(InvalidArgument) as exc:
        configure(max_vertices=0)
    assert exc.value.argument == "max_vertices"
    # A rejected override leaves the old settings in place.
    assert get_settings().threads == 2


def test_as_dict():
    data = Settings().as_dict()
    assert data["enumeration_cap"] == 11
    assert set(data) >= {"max_vertices", "threads", "seed", "db_path"}

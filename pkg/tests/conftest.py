import pytest

from turanbench import config


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    """
    Every test starts from the default settings, whatever the environment
    or an earlier CLI invocation configured.
    """
    monkeypatch.setattr(config, "_settings", config.Settings())

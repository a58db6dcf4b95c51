import os

import pytest


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    for key in list(os.environ):
        if key.startswith("RHYTHMBOOL_"):
            monkeypatch.delenv(key)
    monkeypatch.setenv("RHYTHMBOOL_CONFIG", str(tmp_path / "config.yaml"))

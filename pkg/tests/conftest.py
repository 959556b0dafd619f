import os

import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # searches never touch the user's cache during tests
    monkeypatch.setenv("TURAN_CACHE", str(tmp_path / "results.jsonl"))
    yield

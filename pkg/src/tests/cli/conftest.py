import pytest


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    """Run every command from an empty directory so no stray defdist.yaml or .env is read."""
    monkeypatch.chdir(tmp_path)
    return tmp_path

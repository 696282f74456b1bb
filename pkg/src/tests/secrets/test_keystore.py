import pytest

from defdist.secrets import KeyStore


class TestKeyStore:
    """Test suite for API key lookup."""

    def test_environment_wins(self, monkeypatch, fake):
        """Test that an environment variable is preferred over stored keys."""
        key = fake.sha256()
        monkeypatch.setenv("WANDB_API_KEY", key)
        store = KeyStore()
        store.set_key("WANDB_API_KEY", "from-file")

        assert store.get_key("WANDB_API_KEY") == key

    def test_stored_key(self, monkeypatch):
        """Test lookup of a key that only the store knows."""
        monkeypatch.delenv("DEFDIST_TEST_KEY", raising=False)
        store = KeyStore()
        store.set_key("DEFDIST_TEST_KEY", "abc")

        assert store.get_key("DEFDIST_TEST_KEY") == "abc"

    def test_missing(self, monkeypatch):
        """Test that an unknown key raises KeyError."""
        monkeypatch.delenv("DEFDIST_MISSING_KEY", raising=False)

        with pytest.raises(KeyError):
            KeyStore().get_key("DEFDIST_MISSING_KEY")

"""
Tests for lock utilities (with_instance_lock decorator).
"""

import pytest

from utils.lock_utils import with_instance_lock


class Store:
    def __init__(self, lock_file):
        self.lock_file = lock_file

    @with_instance_lock
    def read(self, value):
        """Return the value while checking the lock is held."""
        assert self.lock_file.exists()
        return value * 2

    @with_instance_lock
    def fail(self):
        raise ValueError("Test exception")


class TestWithInstanceLock:
    """Tests for the with_instance_lock decorator."""

    def test_creates_and_removes_lock_file(self, tmp_path):
        """Test that the lock file exists during the call and is removed after."""
        store = Store(tmp_path / "store.lock")
        assert not store.lock_file.exists()
        assert store.read(5) == 10
        assert not store.lock_file.exists()

    def test_cleanup_on_exception(self, tmp_path):
        """Test that the lock file is removed when the method raises."""
        store = Store(tmp_path / "store.lock")
        with pytest.raises(ValueError, match="Test exception"):
            store.fail()
        assert not store.lock_file.exists()

    def test_repeated_calls(self, tmp_path):
        """Test that the lock can be taken again after release."""
        store = Store(tmp_path / "store.lock")
        assert [store.read(i) for i in range(3)] == [0, 2, 4]

    def test_preserves_metadata(self):
        """Test that the decorator keeps the method name and docstring."""
        assert Store.read.__name__ == "read"
        assert "lock is held" in Store.read.__doc__

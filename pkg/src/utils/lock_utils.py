"""
File locking for stores that keep their lock next to their data file.
"""

import os
from functools import wraps
from typing import Any, Callable, TypeVar

from filelock import FileLock

T = TypeVar("T")

LOCK_TIMEOUT = 10


def with_instance_lock(method: Callable[..., T]) -> Callable[..., T]:
    """
    Run a method while holding ``self.lock_file``, then remove the lock file.

    Example:
        class Store:
            def __init__(self, path):
                self.lock_file = path.with_suffix(".lock")

            @with_instance_lock
            def write(self, data):
                ...
    """

    @wraps(method)
    def wrapper(self: Any, *args: Any, **kwargs: Any) -> T:
        lock_path = str(self.lock_file)
        lock = FileLock(lock_path, timeout=LOCK_TIMEOUT)
        try:
            with lock:
                return method(self, *args, **kwargs)
        finally:
            if os.path.exists(lock_path):
                try:
                    os.remove(lock_path)
                except OSError:
                    pass  # another process may hold it now

    return wrapper

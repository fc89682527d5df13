"""Logging configuration for retractlab."""

import logging
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager


def setup_logging(verbose: bool = False) -> None:
    """
    Configure logging for the application.

    Diagnostics go to stderr so that computed results on stdout stay
    machine-readable.

    Args:
        verbose: If True, set log level to DEBUG, otherwise INFO
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )
    logging.getLogger("filelock").setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


@contextmanager
def log_duration(logger: logging.Logger, label: str) -> Iterator[None]:
    """Log at DEBUG how long the enclosed block took, also when it raises."""
    start = time.perf_counter()
    try:
        yield
    finally:
        logger.debug(f"{label} took {time.perf_counter() - start:.3f}s")

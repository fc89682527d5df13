"""
Cache of enumerated lattices on disk
"""

import json
from pathlib import Path
from typing import Any

from algebra.lattice import Lattice
from logger import get_logger
from models.lattice_spec import LatticeSpec
from utils.lock_utils import with_instance_lock

logger = get_logger(__name__)

FILE_NAME = "lattices.json"


class LatticeStore:
    """
    Stores one representative per isomorphism class, keyed by size.

    The data is stored in the format:
    {
        "<n>": [
            {"n": ..., "covers": [[lo, hi], ...], "labels": null},
            ...
        ]
    }
    """

    def __init__(self, data_dir: Path):
        """
        Initialize the LatticeStore.

        Args:
            data_dir: Directory holding ``lattices.json``; created if missing.
        """
        data_dir.mkdir(parents=True, exist_ok=True)
        self.data_file = data_dir / FILE_NAME
        self.lock_file = self.data_file.with_suffix(self.data_file.suffix + ".lock")

    def _read_all_data(self) -> dict[str, list[dict[str, Any]]]:
        """Read all data (assumes lock is held); a missing file reads as empty."""
        if not self.data_file.exists():
            return {}
        with open(self.data_file, "r") as f:
            return json.load(f)

    def _write_all_data(self, data: dict[str, list[dict[str, Any]]]) -> None:
        """
        Write all data to the JSON file atomically.

        Uses atomic write pattern: write to temp file, then rename.
        """
        temp_file = self.data_file.with_suffix(self.data_file.suffix + ".tmp")
        with open(temp_file, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)
        temp_file.replace(self.data_file)

    @with_instance_lock
    def save_lattices(self, n: int, lattices: list[Lattice]) -> int:
        """
        Replace the cached lattices of size ``n``.

        Returns:
            Number of lattices saved
        """
        data = self._read_all_data()
        data[str(n)] = [L.to_spec().model_dump() for L in lattices]
        self._write_all_data(data)
        logger.debug(f"Cached {len(lattices)} lattices of size {n} in {self.data_file}")
        return len(lattices)

    @with_instance_lock
    def get_lattices(self, n: int) -> list[Lattice] | None:
        """
        Cached lattices of size ``n``, or None when the size was never cached.

        Example:
            store = LatticeStore(Path("~/.retractlab").expanduser())
            eights = store.get_lattices(8)
        """
        items = self._read_all_data().get(str(n))
        if items is None:
            return None
        return [Lattice.from_spec(LatticeSpec(**item)) for item in items]

    @with_instance_lock
    def get_sizes(self) -> list[int]:
        return sorted(int(key) for key in self._read_all_data())

    @with_instance_lock
    def clear_all_data(self) -> None:
        self._write_all_data({})

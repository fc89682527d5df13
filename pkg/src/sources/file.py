from pathlib import Path

from algebra.lattice import Lattice
from logger import get_logger
from models.lattice_spec import LatticeSpec
from sources.base import BaseLatticeSource, LoadedLattice

logger = get_logger(__name__)


class FileSource(BaseLatticeSource):
    """
    Lattice JSON files: ``{"n": 5, "covers": [[0, 1], ...], "labels": [...]}``.
    """

    def get_name(self) -> str:
        return "file"

    def load(self, ref: str, product_cap: int) -> LoadedLattice:
        path = Path(ref)
        logger.debug(f"Reading lattice from {path}")
        spec = LatticeSpec.model_validate_json(path.read_text())
        return LoadedLattice(path.stem, Lattice.from_spec(spec))

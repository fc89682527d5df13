"""Service for loading lattices and reporting their structure."""

from algebra.errors import LatticeError
from algebra.lattice import (
    Lattice,
    StructuralFlags,
    is_distributive_birkhoff,
    structural_flags,
)
from config import Config, get_config
from logger import get_logger
from sources import LoadedLattice, get_source

logger = get_logger(__name__)


class LoadResult:
    """Result of loading a lattice from a source."""

    def __init__(self, loaded: LoadedLattice | None = None, error: str | None = None):
        self.loaded = loaded
        self.error = error
        self.success = error is None


class FlagsResult:
    def __init__(self, flags: StructuralFlags, birkhoff_agrees: bool):
        self.flags = flags
        self.birkhoff_agrees = birkhoff_agrees


class LatticeService:
    """Loads lattices from fixtures, grid shapes and files."""

    def __init__(self, config: Config | None = None):
        """Initialize the lattice service.

        Args:
            config: Effective configuration. If None, reads it from the environment.
        """
        self.config = config or get_config()

    def load(self, source_name: str, ref: str) -> LoadResult:
        """Load a lattice.

        Args:
            source_name: ``fixture``, ``grid`` or ``file``
            ref: fixture name, ``"M N"`` or path

        Returns:
            LoadResult with the lattice or the validation error
        """
        try:
            source = get_source(source_name)
            loaded = source.load(ref, self.config.caps.product_max_n)
            logger.debug(f"Loaded {loaded.name} with {loaded.lattice.n} elements")
            return LoadResult(loaded=loaded)
        except (LatticeError, ValueError, OSError) as e:
            return LoadResult(error=str(e))

    def flags(self, lattice: Lattice) -> FlagsResult:
        flags = structural_flags(lattice)
        return FlagsResult(flags, is_distributive_birkhoff(lattice) == flags.is_distributive)

from algebra.catalog import catalog
from sources.base import BaseLatticeSource, LoadedLattice


class FixtureSource(BaseLatticeSource):
    """Lattices from the built-in catalog, e.g. ``l12`` or ``chain(4)``."""

    def get_name(self) -> str:
        return "fixture"

    def load(self, ref: str, product_cap: int) -> LoadedLattice:
        entry = catalog(ref, product_cap)
        return LoadedLattice(entry.name, entry.lattice, entry.shape)

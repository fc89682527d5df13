from algebra.grid import make_grid
from models.grid_shape import GridShape
from sources.base import BaseLatticeSource, LoadedLattice


class GridSource(BaseLatticeSource):
    """``C_m x C_n`` from an ``"M N"`` reference."""

    def get_name(self) -> str:
        return "grid"

    def load(self, ref: str, product_cap: int) -> LoadedLattice:
        try:
            m, n = (int(part) for part in ref.replace(",", " ").split())
        except ValueError as e:
            raise ValueError(f"Grid reference must be two integers, got {ref!r}") from e
        shape = GridShape(m=m, n=n)
        return LoadedLattice(f"grid({m},{n})", make_grid(shape, product_cap), shape)

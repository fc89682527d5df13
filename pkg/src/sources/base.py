from abc import ABC, abstractmethod
from dataclasses import dataclass

from algebra.lattice import Lattice
from models.grid_shape import GridShape


@dataclass(frozen=True)
class LoadedLattice:
    name: str
    lattice: Lattice
    shape: GridShape | None = None


class BaseLatticeSource(ABC):
    @abstractmethod
    def get_name(self) -> str:
        """
        Name of the source, matching its command-line option.
        """

    @abstractmethod
    def load(self, ref: str, product_cap: int) -> LoadedLattice:
        """
        Build the lattice a reference points to.

        Args:
            ref: fixture name, ``"M N"`` grid shape or file path
            product_cap: size cap for direct products

        Raises:
            LatticeError: if the reference does not describe a valid lattice.
        """

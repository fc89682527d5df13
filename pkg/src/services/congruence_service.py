"""Service for congruences and compatible quasiorders."""

from algebra.congruence import (
    Partition,
    Relation,
    all_compatible_quasiorders,
    congruence_lattice,
)
from algebra.errors import LatticeError
from algebra.lattice import Lattice, is_distributive
from config import Config, get_config


class CongruenceResult:
    """Result of computing ``Con L``."""

    def __init__(
        self,
        congruences: list[Partition] | None = None,
        con_lattice: Lattice | None = None,
        error: str | None = None,
    ):
        self.congruences = congruences or []
        self.con_lattice = con_lattice
        self.error = error
        self.success = error is None

    @property
    def is_boolean(self) -> bool:
        L = self.con_lattice
        if L is None:
            return False
        atoms = len(L.upper_covers[L.bottom]) if L.n > 1 else 0
        return L.n == 2**atoms and is_distributive(L)


class QuasiorderResult:
    def __init__(self, relations: list[Relation] | None = None, error: str | None = None):
        self.relations = relations or []
        self.error = error
        self.success = error is None


class CongruenceService:
    """Enumerates congruences and compatible quasiorders within the configured caps."""

    def __init__(self, config: Config | None = None):
        self.config = config or get_config()

    def congruences(self, lattice: Lattice) -> CongruenceResult:
        try:
            con_lattice, congruences = congruence_lattice(
                lattice, self.config.caps.congruence_max_n
            )
            return CongruenceResult(congruences=congruences, con_lattice=con_lattice)
        except LatticeError as e:
            return CongruenceResult(error=str(e))

    def quasiorders(self, lattice: Lattice) -> QuasiorderResult:
        try:
            relations = all_compatible_quasiorders(lattice, self.config.caps.quasiorder_max_n)
            return QuasiorderResult(relations=relations)
        except LatticeError as e:
            return QuasiorderResult(error=str(e))

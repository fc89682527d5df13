"""Service for retractions, retracts and retraction congruences."""

from typing import Literal

from algebra.congruence import Partition, all_congruences
from algebra.errors import LatticeError
from algebra.lattice import Lattice
from algebra.retraction import (
    EndoMap,
    RetPoset,
    all_retractions,
    is_retraction_congruence,
    rcon,
    retracts,
)
from config import Config, get_config
from logger import get_logger, log_duration
from utils.bits import SubsetMask

logger = get_logger(__name__)

RetractMode = Literal["bruteforce", "transversal", "both"]


class RetractionsResult:
    def __init__(self, retractions: list[EndoMap] | None = None, error: str | None = None):
        self.retractions = retractions or []
        self.error = error
        self.success = error is None


class RetractsResult:
    """Result of computing the retracts of a lattice.

    ``agreement`` is set in ``both`` mode; ``poset`` when the lattice check
    was requested.
    """

    def __init__(
        self,
        mode: RetractMode,
        retracts: list[SubsetMask] | None = None,
        agreement: bool | None = None,
        poset: RetPoset | None = None,
        error: str | None = None,
    ):
        self.mode = mode
        self.retracts = retracts or []
        self.agreement = agreement
        self.poset = poset
        self.error = error
        self.success = error is None


class RconResult:
    def __init__(
        self,
        kernels: list[Partition] | None = None,
        congruence_count: int = 0,
        witnesses: dict[Partition, SubsetMask] | None = None,
        error: str | None = None,
    ):
        self.kernels = kernels or []
        self.congruence_count = congruence_count
        self.witnesses = witnesses or {}
        self.error = error
        self.success = error is None

    @property
    def equals_con(self) -> bool:
        return len(self.kernels) == self.congruence_count


class RetractService:
    """Runs the retraction computations within the configured caps."""

    def __init__(self, config: Config | None = None):
        self.config = config or get_config()

    @property
    def _caps(self):
        return self.config.caps

    def retractions(self, lattice: Lattice) -> RetractionsResult:
        try:
            return RetractionsResult(all_retractions(lattice, self._caps.max_n))
        except LatticeError as e:
            return RetractionsResult(error=str(e))

    def retracts(
        self, lattice: Lattice, mode: RetractMode = "bruteforce", check_lattice: bool = False
    ) -> RetractsResult:
        """Compute the retracts, optionally cross-checking both methods.

        Args:
            lattice: The lattice
            mode: ``bruteforce``, ``transversal`` or ``both``
            check_lattice: Also build ``Ret L`` and decide whether it is a lattice

        Returns:
            RetractsResult with the retracts or an error
        """
        try:
            with log_duration(logger, f"Retracts ({mode}) on {lattice.n} elements"):
                found, agreement = self._find_retracts(lattice, mode)
            poset = RetPoset(lattice, found) if check_lattice else None
            return RetractsResult(mode, found, agreement, poset)
        except LatticeError as e:
            return RetractsResult(mode, error=str(e))

    def _find_retracts(
        self, lattice: Lattice, mode: RetractMode
    ) -> tuple[list[SubsetMask], bool | None]:
        caps = self._caps
        if mode != "both":
            return retracts(lattice, mode, caps.max_n, caps.congruence_max_n), None
        brute = retracts(lattice, "bruteforce", caps.max_n, caps.congruence_max_n)
        transversal = retracts(lattice, "transversal", caps.max_n, caps.congruence_max_n)
        agreement = brute == transversal
        if not agreement:
            logger.error("Brute force and transversal retracts differ")
        return brute, agreement

    def rcon(self, lattice: Lattice) -> RconResult:
        caps = self._caps
        try:
            kernels = rcon(lattice, "transversal", caps.max_n, caps.congruence_max_n)
            witnesses = {}
            for theta in kernels:
                _, witness = is_retraction_congruence(lattice, theta)
                if witness is not None:
                    witnesses[theta] = witness
            congruence_count = len(all_congruences(lattice, caps.congruence_max_n))
            return RconResult(kernels, congruence_count, witnesses)
        except LatticeError as e:
            return RconResult(error=str(e))

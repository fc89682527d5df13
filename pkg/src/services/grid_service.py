"""Service for the grid computations."""

from algebra.errors import LatticeError
from algebra.grid import count_any, grid_retracts, make_grid, maximal_chains, scientific
from algebra.retraction import RetPoset, retracts
from config import Config, get_config
from models.grid_shape import GridShape
from models.reports import GridCountReport
from utils.bits import SubsetMask, sorted_masks


class GridCountResult:
    def __init__(self, report: GridCountReport | None = None, error: str | None = None):
        self.report = report
        self.error = error
        self.success = error is None


class GridRetractsResult:
    def __init__(
        self,
        shape: GridShape,
        retracts: list[SubsetMask] | None = None,
        expected_total: int = 0,
        error: str | None = None,
    ):
        self.shape = shape
        self.retracts = retracts or []
        self.expected_total = expected_total
        self.error = error
        self.success = error is None

    @property
    def matches_formula(self) -> bool:
        return len(self.retracts) + 1 == self.expected_total


class GridChainsResult:
    """The chains ``H1`` and ``H2``; ``verified`` maps each name to its maximality verdict."""

    def __init__(
        self,
        h1: list[SubsetMask] | None = None,
        h2: list[SubsetMask] | None = None,
        verified: dict[str, bool] | None = None,
        error: str | None = None,
    ):
        self.h1 = h1 or []
        self.h2 = h2 or []
        self.verified = verified
        self.error = error
        self.success = error is None


class GridService:
    """Counts, lists and chains the retracts of ``C_m x C_n``."""

    def __init__(self, config: Config | None = None):
        self.config = config or get_config()

    def count(self, shape: GridShape, digits: int | None = None) -> GridCountResult:
        """Exact retract counts, with scientific roundings when ``digits`` is set."""
        try:
            sts, isc, total = count_any(shape)
            report = GridCountReport(
                m=shape.m, n=shape.n, sts=str(sts), isc=str(isc), total=str(total)
            )
            if digits is not None:
                report.sts_scientific = scientific(sts, digits)
                report.isc_scientific = scientific(isc, digits)
                report.total_scientific = scientific(total, digits)
            return GridCountResult(report)
        except (LatticeError, ValueError) as e:
            return GridCountResult(error=str(e))

    def retracts(self, shape: GridShape) -> GridRetractsResult:
        try:
            found = sorted_masks(grid_retracts(shape, self.config.caps.grid_max_mn))
            _, _, total = count_any(shape)
            return GridRetractsResult(shape, found, total)
        except LatticeError as e:
            return GridRetractsResult(shape, error=str(e))

    def chains(self, shape: GridShape, verify: bool = False) -> GridChainsResult:
        """Build ``H1``/``H2`` and, with ``verify``, check them against ``Ret G``."""
        try:
            h1, h2 = maximal_chains(shape)
            verified = None
            if verify:
                caps = self.config.caps
                grid = make_grid(shape, caps.product_max_n)
                poset = RetPoset(grid, retracts(grid, "bruteforce", caps.max_n))
                verified = {"H1": poset.is_maximal_chain(h1), "H2": poset.is_maximal_chain(h2)}
            return GridChainsResult(h1, h2, verified)
        except LatticeError as e:
            return GridChainsResult(error=str(e))

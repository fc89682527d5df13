"""Service for enumeration, the L_8 search and the fixture checks."""

from algebra.catalog import BooleanMinusVerdict, Which, boolean_minus_element_check, verify_l12
from algebra.enumeration import enumerate_lattices
from algebra.errors import LatticeError
from algebra.lattice import Lattice
from algebra.search import search_l8
from config import Config, get_config
from logger import get_logger, log_duration
from models.reports import SearchReport
from persist import LatticeStore

logger = get_logger(__name__)


class EnumerationResult:
    def __init__(
        self,
        n: int,
        lattices: list[Lattice] | None = None,
        from_cache: bool = False,
        error: str | None = None,
    ):
        self.n = n
        self.lattices = lattices or []
        self.from_cache = from_cache
        self.error = error
        self.success = error is None


class SearchResult:
    def __init__(self, report: SearchReport | None = None, error: str | None = None):
        self.report = report
        self.error = error
        self.success = error is None


class BooleanMinusResult:
    def __init__(self, verdict: BooleanMinusVerdict | None = None, error: str | None = None):
        self.verdict = verdict
        self.error = error
        self.success = error is None


class SuiteResult:
    def __init__(self, checks: dict[str, bool] | None = None, error: str | None = None):
        self.checks = checks or {}
        self.error = error
        self.success = error is None

    @property
    def passed(self) -> bool:
        return self.success and all(self.checks.values())


class CatalogService:
    """Enumerates small lattices (through the on-disk cache) and runs the searches."""

    def __init__(
        self,
        config: Config | None = None,
        store: LatticeStore | None = None,
        use_cache: bool = True,
    ):
        """Initialize the catalog service.

        Args:
            config: Effective configuration. If None, reads it from the environment.
            store: LatticeStore instance. If None and caching is on, uses ``data_dir``.
            use_cache: Read and write the enumeration cache
        """
        self.config = config or get_config()
        self.use_cache = use_cache
        self.store = store
        if self.store is None and use_cache:
            self.store = LatticeStore(self.config.data_dir)

    def enumerate(self, n: int) -> EnumerationResult:
        cap = self.config.caps.enumerate_max_n
        try:
            if self.use_cache and self.store is not None and n <= cap:
                cached = self.store.get_lattices(n)
                if cached is not None:
                    logger.debug(f"Using {len(cached)} cached lattices of size {n}")
                    return EnumerationResult(n, cached, from_cache=True)
            with log_duration(logger, f"Enumerating lattices of size {n}"):
                lattices = enumerate_lattices(n, cap)
            if self.use_cache and self.store is not None:
                self.store.save_lattices(n, lattices)
            return EnumerationResult(n, lattices)
        except (LatticeError, OSError, ValueError) as e:
            return EnumerationResult(n, error=str(e))

    def search_l8(self, top: int = 10) -> SearchResult:
        lattices = self.enumerate(8)
        if not lattices.success:
            return SearchResult(error=lattices.error)
        try:
            with log_duration(logger, "L_8 search"):
                report = search_l8(lattices.lattices, top, self.config.caps.max_n)
            return SearchResult(report)
        except LatticeError as e:
            return SearchResult(error=str(e))

    def boolean_minus(self, k: int, which: Which) -> BooleanMinusResult:
        try:
            return BooleanMinusResult(boolean_minus_element_check(k, which))
        except LatticeError as e:
            return BooleanMinusResult(error=str(e))

    def l12_suite(self) -> SuiteResult:
        try:
            return SuiteResult(verify_l12(self.config.caps.max_n))
        except LatticeError as e:
            return SuiteResult(error=str(e))

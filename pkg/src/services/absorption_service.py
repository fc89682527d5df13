"""Service for checking absorption properties of retracts."""

from pathlib import Path

from pydantic import ValidationError

from algebra.absorption import (
    BUILTIN_PROPERTIES,
    AbsorptionProperty,
    AbsorptionVerdict,
    builtin_property,
    check_absorption,
)
from algebra.errors import LatticeError, PropertyFileError
from algebra.lattice import Lattice
from config import Config, get_config
from logger import get_logger
from models.absorption_spec import AbsorptionPropertySpec
from utils.bits import SubsetMask

logger = get_logger(__name__)


class AbsorptionResult:
    def __init__(
        self,
        prop: AbsorptionProperty | None = None,
        verdict: AbsorptionVerdict | None = None,
        error: str | None = None,
    ):
        self.prop = prop
        self.verdict = verdict
        self.error = error
        self.success = error is None


def load_property(ref: str) -> AbsorptionProperty:
    """Resolve a built-in property name or read a property JSON file.

    Raises:
        PropertyFileError: if the file is unreadable, malformed or has no pattern.
    """
    if ref in BUILTIN_PROPERTIES:
        return builtin_property(ref)
    path = Path(ref)
    try:
        spec = AbsorptionPropertySpec.model_validate_json(path.read_text())
    except FileNotFoundError as e:
        raise PropertyFileError(
            f"{ref!r} is neither a built-in property ({', '.join(BUILTIN_PROPERTIES)}) nor a file"
        ) from e
    except (OSError, ValidationError) as e:
        raise PropertyFileError(f"Cannot read property file {path}: {e}") from e
    return AbsorptionProperty.from_spec(spec, name=path.stem)


class AbsorptionService:
    """Checks an absorption property against the retracts of a lattice."""

    def __init__(self, config: Config | None = None):
        self.config = config or get_config()

    def check(
        self, lattice: Lattice, ref: str, retract: SubsetMask | None = None
    ) -> AbsorptionResult:
        """Check a property on all retracts, or on ``retract`` alone.

        Args:
            lattice: The lattice whose retracts are tested
            ref: Built-in property name or path to a property file
            retract: Optional single retract to test

        Returns:
            AbsorptionResult with the verdict or an error
        """
        try:
            prop = load_property(ref)
            verdict = check_absorption(lattice, prop, retract, self.config.caps.max_n)
            logger.debug(
                f"{prop.name}: {verdict.embeddings_checked} embeddings, "
                f"{verdict.retracts_checked} retracts"
            )
            return AbsorptionResult(prop, verdict)
        except LatticeError as e:
            return AbsorptionResult(error=str(e))

"""JSON report schemas emitted by the CLI."""

from pydantic import BaseModel, Field

from models.lattice_spec import LatticeSpec


class GridCountReport(BaseModel):
    """Exact retract counts; big integers travel as decimal strings."""

    m: int
    n: int
    sts: str = Field(description="Number of straight subsets, including the empty set")
    isc: str = Field(description="Number of injective skew chains")
    total: str = Field(description="Size of Ret G, including the empty set")
    sts_scientific: str | None = None
    isc_scientific: str | None = None
    total_scientific: str | None = None


class ConstraintReport(BaseModel):
    """Per-constraint outcome of the L_8 search for one lattice."""

    lattice: LatticeSpec
    pair: tuple[int, int] | None = Field(
        default=None, description="Cover pair (c, d) the constraints were evaluated on"
    )
    constraints: dict[str, bool]
    congruence_count: int
    retraction_congruence_count: int

    @property
    def score(self) -> int:
        return sum(self.constraints.values())

    @property
    def full_match(self) -> bool:
        return all(self.constraints.values())


class SearchReport(BaseModel):
    lattices_scanned: int
    full_matches: list[ConstraintReport]
    ranked_partial_matches: list[ConstraintReport]

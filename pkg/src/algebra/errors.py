"""Exceptions raised by the lattice algorithms."""


class LatticeError(Exception):
    """Base class for every error raised by the algebra package."""


class NotAPoset(LatticeError):
    """Raised when a cover relation has a cycle or is not antisymmetric."""


class NotALattice(LatticeError):
    """Raised when some pair of elements lacks a unique meet or join."""

    def __init__(self, witness: tuple[int, int], operation: str):
        self.witness = witness
        self.operation = operation
        a, b = witness
        super().__init__(
            f"Elements {a} and {b} have no unique {operation}; not a lattice."
        )


class IndexOutOfRange(LatticeError, IndexError):
    """Raised when an element index does not belong to the lattice."""


class SizeLimit(LatticeError):
    """Raised when a brute-force computation would exceed a configured cap."""

    def __init__(self, what: str, size: int, cap: int, setting: str = "RETRACTLAB_MAX_N"):
        self.what = what
        self.size = size
        self.cap = cap
        self.setting = setting
        hint = "--max-n or RETRACTLAB_MAX_N" if setting == "RETRACTLAB_MAX_N" else setting
        super().__init__(
            f"{what} needs size {size}, above the configured cap {cap}. "
            f"Raise the cap with {hint}."
        )


class NotFactorizable(LatticeError):
    """Raised when a relation on a product is not a product of relations."""


class NotARetraction(LatticeError):
    """Raised when a map is expected to be a retraction but is not."""


class NotACongruence(LatticeError):
    """Raised when a partition is expected to be a congruence but is not."""


class NotARetract(LatticeError):
    """Raised when a subset is expected to be a retract but is not."""


class InvalidShape(LatticeError):
    """Raised for grid shapes outside the range an operation supports."""


class UnknownName(LatticeError):
    """Raised when a catalog name or built-in property name is not known."""


class PropertyFileError(LatticeError):
    """Raised when an absorption property file cannot be used."""

from inspect import isabstract

from sources.base import BaseLatticeSource, LoadedLattice
from sources.file import FileSource
from sources.fixture import FixtureSource
from sources.grid import GridSource

__all__ = [
    "BaseLatticeSource",
    "FileSource",
    "FixtureSource",
    "GridSource",
    "LoadedLattice",
    "get_source",
]


def get_source(name: str) -> BaseLatticeSource:
    for source_cls in BaseLatticeSource.__subclasses__():
        if isabstract(source_cls):
            continue
        source = source_cls()  # type: ignore[abstract]
        if source.get_name().lower() == name.lower():
            return source
    raise ValueError(f"Lattice source with name '{name}' not found.")

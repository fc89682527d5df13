"""
Output helpers for the CLI.

Text goes through a rich console, JSON and DOT through ``click.echo`` so
they stay byte-for-byte stable. Element labels such as ``[q, 1]`` contain
brackets, so console markup is off.
"""

import json
from typing import Any, Iterable, Sequence

import click
from rich.console import Console
from rich.table import Table

from algebra.congruence import Partition
from algebra.lattice import Lattice
from utils.bits import SubsetMask, elements_of

console = Console(soft_wrap=True, highlight=False, markup=False)


def echo_json(payload: Any) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def echo_dot(text: str) -> None:
    click.echo(text, nl=False)


def print_line(text: str = "") -> None:
    console.print(text)


def print_table(title: str | None, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Render ``rows`` as a rich table; cells are converted with ``str``."""
    table = Table(title=title, show_lines=False)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(str(cell) for cell in row))
    console.print(table)


def mask_json(mask: SubsetMask) -> list[int]:
    """Subsets serialize as sorted index lists."""
    return elements_of(mask)


def format_partition(L: Lattice, P: Partition) -> str:
    blocks = ["{" + ", ".join(L.label(x) for x in block) + "}" for block in P.blocks()]
    return " ".join(blocks)


def format_map(L: Lattice, images: Sequence[int]) -> str:
    return ", ".join(f"{L.label(x)}->{L.label(y)}" for x, y in enumerate(images))


def yes_no(value: bool | None) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"

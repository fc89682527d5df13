"""
Graphviz export of Hasse diagrams.

One node per element, one edge per cover with the lower element at the tail;
``rankdir=BT`` puts the bottom at the bottom. Render with::

    dot -Tpng -O lattice.gv
"""

from __future__ import annotations

from typing import Sequence

from algebra.lattice import Lattice
from algebra.retraction import RetPoset
from utils.bits import SubsetMask


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(
    labels: Sequence[str],
    covers: Sequence[tuple[int, int]],
    name: str = "L",
    highlight: SubsetMask = 0,
) -> str:
    lines = [f"digraph {_quote(name)} {{", "\trankdir=BT;", "\tnode [shape=circle];"]
    for x, label in enumerate(labels):
        style = ", style=filled, fillcolor=black, fontcolor=white" if highlight >> x & 1 else ""
        lines.append(f"\t{x} [label={_quote(label)}{style}];")
    for lo, hi in covers:
        lines.append(f"\t{lo} -> {hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dot(L: Lattice, name: str = "L", highlight: SubsetMask = 0) -> str:
    """Hasse diagram of ``L``; elements in ``highlight`` are drawn filled."""
    return hasse_dot([L.label(x) for x in range(L.n)], L.covers, name, highlight)


def ret_poset_dot(poset: RetPoset, name: str = "Ret") -> str:
    """Hasse diagram of ``Ret L``; nodes are labelled with their element sets."""
    labels = [poset.lattice.format_mask(mask) for mask in poset.elements]
    return hasse_dot(labels, poset.covers, name)

"""
Search for an eight-element lattice whose retraction congruences miss exactly
one congruence.

For a lattice ``L`` and a covering pair ``c ≺ d`` the constraints are:

* ``unique_block``: ``con(c, d)`` has ``{c, d}`` as its only non-singleton block;
* ``removal_breaks_sublattice``: neither ``L \\ {c}`` nor ``L \\ {d}`` is a sublattice;
* ``con_boolean_32``: ``Con L`` is a boolean lattice with 32 elements;
* ``rcon_is_con_minus_theta``: ``RCon L = Con L \\ {con(c, d)}``;
* ``rcon_nondistributive_lattice``: ``RCon L`` ordered by inclusion is a
  lattice that is not distributive.
"""

from __future__ import annotations

from typing import Iterable

from algebra.congruence import (
    DEFAULT_CONGRUENCE_CAP,
    Partition,
    congruence_lattice,
    principal_congruence,
)
from algebra.errors import NotALattice
from algebra.lattice import Lattice, is_distributive, is_sublattice
from algebra.retraction import DEFAULT_RETRACTION_CAP, rcon
from logger import get_logger
from models.reports import ConstraintReport, SearchReport

logger = get_logger(__name__)

CONSTRAINTS = (
    "unique_block",
    "removal_breaks_sublattice",
    "con_boolean_32",
    "rcon_is_con_minus_theta",
    "rcon_nondistributive_lattice",
)


def _is_boolean(L: Lattice) -> bool:
    atoms = len(L.upper_covers[L.bottom]) if L.n > 1 else 0
    return L.n == 2**atoms and is_distributive(L)


def _rcon_nondistributive_lattice(kernels: list[Partition]) -> bool:
    leq = [[p.refines(q) for q in kernels] for p in kernels]
    try:
        ordered = Lattice.from_leq(leq)
    except NotALattice:
        return False
    return not is_distributive(ordered)


def evaluate(
    L: Lattice,
    cap: int = DEFAULT_RETRACTION_CAP,
    congruence_cap: int = DEFAULT_CONGRUENCE_CAP,
) -> ConstraintReport:
    """Best covering pair of ``L`` with its per-constraint outcome."""
    con_lattice, congruences = congruence_lattice(L, congruence_cap)
    kernels = rcon(L, cap=cap, congruence_cap=congruence_cap)
    kernel_set = set(kernels)
    con_boolean = len(congruences) == 32 and _is_boolean(con_lattice)
    rcon_shape = bool(kernels) and _rcon_nondistributive_lattice(kernels)

    best: ConstraintReport | None = None
    for c, d in L.covers:
        theta = principal_congruence(L, c, d)
        constraints = {
            "unique_block": theta.nontrivial_blocks() == [sorted((c, d))],
            "removal_breaks_sublattice": not is_sublattice(L, L.full ^ (1 << c))
            and not is_sublattice(L, L.full ^ (1 << d)),
            "con_boolean_32": con_boolean,
            "rcon_is_con_minus_theta": kernel_set == set(congruences) - {theta},
            "rcon_nondistributive_lattice": rcon_shape,
        }
        report = ConstraintReport(
            lattice=L.to_spec(),
            pair=(c, d),
            constraints=constraints,
            congruence_count=len(congruences),
            retraction_congruence_count=len(kernels),
        )
        if best is None or report.score > best.score:
            best = report
    if best is None:
        best = ConstraintReport(
            lattice=L.to_spec(),
            constraints={name: False for name in CONSTRAINTS},
            congruence_count=len(congruences),
            retraction_congruence_count=len(kernels),
        )
    return best


def search_l8(
    lattices: Iterable[Lattice],
    top: int = 10,
    cap: int = DEFAULT_RETRACTION_CAP,
) -> SearchReport:
    """
    Evaluate every lattice and collect full matches.

    Partial matches are ranked by the number of satisfied constraints (ties
    keep enumeration order) and the best ``top`` are reported.
    """
    full: list[ConstraintReport] = []
    partial: list[ConstraintReport] = []
    scanned = 0
    for L in lattices:
        scanned += 1
        report = evaluate(L, cap)
        (full if report.full_match else partial).append(report)
    partial.sort(key=lambda r: -r.score)
    logger.debug(f"Scanned {scanned} lattices, {len(full)} full matches")
    return SearchReport(
        lattices_scanned=scanned,
        full_matches=full,
        ranked_partial_matches=partial[:top],
    )

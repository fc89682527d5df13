"""
Named fixture lattices.

Names: ``chain(k)``, ``boolean(k)``, ``m3``, ``n5``, ``glued_squares_k7``,
``grid(m,n)`` and ``l12``.

``l12`` is the twelve-element modular lattice on
``0, a, b, c1, c2, c3, q, p, d1, d2, d3, 1`` in which ``[b, p]`` and
``[q, 1]`` are diamonds and ``[0, a]`` is a two-element interval.
:func:`verify_l12` recomputes every property the fixture is meant to have.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Literal

from algebra.absorption import glued_squares
from algebra.congruence import (
    Partition,
    all_congruences,
    congruence_lattice,
    principal_congruence,
)
from algebra.errors import InvalidShape, LatticeError, NotALattice, UnknownName
from algebra.grid import make_grid
from algebra.lattice import (
    DEFAULT_PRODUCT_CAP,
    Lattice,
    chain,
    is_distributive,
    is_distributive_birkhoff,
    is_modular,
    lattice_from_covers,
    restrict,
)
from algebra.retraction import is_retraction, rcon, ret_poset, retraction_from_transversal
from logger import get_logger
from models.grid_shape import GridShape
from utils.bits import SubsetMask, full_mask, iter_bits, popcount

logger = get_logger(__name__)

L12_LABELS = ["0", "a", "b", "c1", "c2", "c3", "q", "p", "d1", "d2", "d3", "1"]
# fmt: off
L12_COVERS = [
    ("0", "a"), ("0", "b"),
    ("a", "c1"), ("b", "c1"), ("b", "c2"), ("b", "c3"), ("b", "q"),
    ("c1", "p"), ("c2", "p"), ("c3", "p"),
    ("c1", "d1"), ("c2", "d2"), ("c3", "d3"),
    ("q", "d1"), ("q", "d2"), ("q", "d3"),
    ("p", "1"), ("d1", "1"), ("d2", "1"), ("d3", "1"),
]
# fmt: on

FIXTURE_NAMES = ("chain(k)", "boolean(k)", "m3", "n5", "glued_squares_k7", "grid(m,n)", "l12")

_NAME_PATTERN = re.compile(r"^\s*([a-z_0-9]+?)\s*(?:\(\s*([\d\s,]*)\))?\s*$")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    lattice: Lattice
    notes: str
    shape: GridShape | None = None


def boolean(k: int) -> Lattice:
    """Subsets of a ``k``-element set; element ``i`` is the subset with bitmask ``i``."""
    if k < 0:
        raise InvalidShape(f"boolean(k) needs k >= 0, got {k}")
    size = 1 << k
    down = [0] * size
    up = [0] * size
    for i in range(size):
        # iterate submasks of i
        sub = i
        while True:
            down[i] |= 1 << sub
            up[sub] |= 1 << i
            if sub == 0:
                break
            sub = (sub - 1) & i
    meet = [[i & j for j in range(size)] for i in range(size)]
    join = [[i | j for j in range(size)] for i in range(size)]
    return Lattice(up, down, meet, join)


def l12() -> Lattice:
    index = {label: i for i, label in enumerate(L12_LABELS)}
    covers = [(index[lo], index[hi]) for lo, hi in L12_COVERS]
    return lattice_from_covers(len(L12_LABELS), covers, L12_LABELS)


def _parse(name: str) -> tuple[str, list[int]]:
    match = _NAME_PATTERN.match(name.lower())
    if not match:
        raise UnknownName(f"Unknown fixture {name!r}")
    base, args = match.group(1), match.group(2)
    try:
        numbers = [int(a) for a in args.split(",")] if args else []
    except ValueError as e:
        raise UnknownName(f"Bad arguments in fixture name {name!r}") from e
    return base, numbers


def catalog(name: str, product_cap: int = DEFAULT_PRODUCT_CAP) -> CatalogEntry:
    """
    Look up a fixture by name.

    Raises:
        UnknownName: for names outside the catalog or with wrong arguments.
    """
    base, args = _parse(name)
    arity = {"chain": 1, "boolean": 1, "grid": 2}.get(base, 0)
    if len(args) != arity:
        raise UnknownName(
            f"Fixture {base!r} takes {arity} argument(s); known fixtures: "
            + ", ".join(FIXTURE_NAMES)
        )
    if base == "chain":
        return CatalogEntry(f"chain({args[0]})", chain(args[0]), "Finite chain")
    if base == "boolean":
        return CatalogEntry(f"boolean({args[0]})", boolean(args[0]), "Powerset lattice")
    if base == "grid":
        shape = GridShape(m=args[0], n=args[1])
        lattice = make_grid(shape, product_cap)
        return CatalogEntry(
            f"grid({shape.m},{shape.n})", lattice, "Product of two chains", shape
        )
    if base == "m3":
        lattice = lattice_from_covers(
            5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"]
        )
        return CatalogEntry("m3", lattice, "Diamond: three atoms, simple and modular")
    if base == "n5":
        lattice = lattice_from_covers(
            5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "a", "b", "c", "1"]
        )
        return CatalogEntry("n5", lattice, "Pentagon: the smallest non-modular lattice")
    if base == "glued_squares_k7":
        return CatalogEntry(
            "glued_squares_k7", glued_squares(), "Two squares glued at the narrows y"
        )
    if base == "l12":
        return CatalogEntry(
            "l12",
            l12(),
            "Modular lattice whose retracts [0,p] and [0,a]∪[q,1] have no meet in Ret",
        )
    raise UnknownName(f"Unknown fixture {name!r}; known fixtures: " + ", ".join(FIXTURE_NAMES))


def is_transversal(L: Lattice, theta: Partition, S: SubsetMask) -> bool:
    """True iff ``S`` is a sublattice meeting every block of ``theta`` once."""
    try:
        return is_retraction(L, retraction_from_transversal(L, theta, S))
    except LatticeError:
        return False


def _is_diamond(L: Lattice, lo: int, hi: int) -> bool:
    interval = L.interval(lo, hi)
    if popcount(interval) != 5:
        return False
    middle = [x for x in iter_bits(interval) if x not in (lo, hi)]
    return all(not L.comparable(x, y) for i, x in enumerate(middle) for y in middle[i + 1 :])


def l12_retracts(L: Lattice) -> tuple[int, int]:
    """``S1 = [0, p]`` and ``S2 = [0, a] ∪ [q, 1]``."""
    e = L.element
    s1 = L.down[e("p")]
    s2 = L.interval(e("0"), e("a")) | L.up[e("q")]
    return s1, s2


def verify_l12(cap: int = 12) -> dict[str, bool]:
    """Recompute the defining properties of the ``l12`` fixture by brute force."""
    L = l12()
    e = L.element
    s1, s2 = l12_retracts(L)
    theta = principal_congruence(L, e("b"), e("q"))
    poset = ret_poset(L, cap)
    members = set(poset.elements)
    con_lattice, congruences = congruence_lattice(L)
    atoms = {congruences[x] for x in con_lattice.upper_covers[con_lattice.bottom]}
    expected_atoms = {
        principal_congruence(L, e("0"), e("a")),
        principal_congruence(L, e("0"), e("b")),
        theta,
    }
    expected_theta_blocks = sorted(
        sorted(L.element(x) for x in block)
        for block in (["b", "q"], ["c1", "d1"], ["c2", "d2"], ["c3", "d3"], ["p", "1"])
    )
    s1_index, s2_index = poset.index.get(s1), poset.index.get(s2)
    checks = {
        "modular": is_modular(L),
        "not_distributive": not is_distributive(L),
        "diamond_b_p": _is_diamond(L, e("b"), e("p")),
        "diamond_q_1": _is_diamond(L, e("q"), e("1")),
        "interval_0_a": L.interval(e("0"), e("a")) == L.mask(["0", "a"]),
        "con_b_q_blocks": theta.nontrivial_blocks() == expected_theta_blocks,
        "s1_s2_retracts": s1 in members and s2 in members,
        "s1_s2_share_congruence": is_transversal(L, theta, s1)
        and is_transversal(L, theta, s2),
        "0_a_not_retract": L.mask(["0", "a"]) not in members,
        "ret_not_lattice": not poset.is_lattice
        and s1_index is not None
        and s2_index is not None
        and poset.meet(s1_index, s2_index) is None,
        "con_has_8_members": len(congruences) == 8,
        "con_is_boolean": is_distributive(con_lattice)
        and con_lattice.n == 2 ** len(atoms),
        "con_atoms": atoms == expected_atoms,
        "rcon_equals_con": rcon(L, cap=cap) == all_congruences(L),
    }
    logger.debug(f"l12 checks: {checks}")
    return checks


Which = Literal["atom", "coatom"]


@dataclass(frozen=True)
class BooleanMinusVerdict:
    k: int
    which: Which
    removed: int
    size: int
    is_lattice: bool
    is_distributive: bool | None


def boolean_minus_element_check(
    k: int, which: Which = "coatom", element: int | None = None
) -> BooleanMinusVerdict:
    """
    Remove one atom or coatom from ``B_k`` and test what is left.

    ``element`` selects which atom/coatom goes (default: the one involving
    bit 0). Distributivity is decided through join-irreducibles.

    Raises:
        InvalidShape: unless ``2 <= k <= 10``, or if ``element`` is not an
            atom/coatom of the requested kind.
    """
    if not 2 <= k <= 10:
        raise InvalidShape(f"boolean-minus needs 2 <= k <= 10, got {k}")
    full = full_mask(k)
    if element is None:
        element = 1 if which == "atom" else full ^ 1
    level = 1 if which == "atom" else k - 1
    if not (0 <= element <= full and popcount(element) == level):
        kind = "an atom" if which == "atom" else "a coatom"
        raise InvalidShape(f"{element} is not {kind} of B_{k}")
    B = boolean(k)
    try:
        rest = restrict(B, full_mask(B.n) ^ (1 << element))
    except NotALattice:
        return BooleanMinusVerdict(k, which, element, B.n - 1, False, None)
    return BooleanMinusVerdict(
        k=k,
        which=which,
        removed=element,
        size=rest.n,
        is_lattice=True,
        is_distributive=is_distributive_birkhoff(rest),
    )

"""
Retracts of grids ``G = C_m x C_n``.

A subset ``X x Y`` of the grid is *straight*; every other subset is *skew*.
A subset is *left injective* when its first projection is injective, *right
injective* when the second one is, and *doubly injective* when both are.
The retracts of ``G`` are exactly

* the straight subsets (the empty set included), and
* the skew chains that are left or right injective.

Both classes are counted in closed form with exact integers. An ``s``-element
left injective chain is a strictly increasing sequence of first coordinates
paired with a weakly increasing sequence of second coordinates, which gives
``C(m, s) * C(n + s - 1, s)`` of them; the enumeration in
:func:`grid_retracts` walks the same sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterator, Sequence

from algebra.errors import InvalidShape, SizeLimit
from algebra.lattice import DEFAULT_PRODUCT_CAP, Lattice, chain, direct_product
from logger import get_logger
from models.grid_shape import GridShape
from utils.bits import SubsetMask, iter_bits

logger = get_logger(__name__)

DEFAULT_GRID_RETRACT_CAP = 64


def make_grid(shape: GridShape, cap: int = DEFAULT_PRODUCT_CAP) -> Lattice:
    """``C_m x C_n`` with element ``(i, j)`` at index ``i * n + j``."""
    return direct_product(chain(shape.m), chain(shape.n), cap)


def _points(shape: GridShape, S: SubsetMask) -> list[tuple[int, int]]:
    return [shape.point(x) for x in iter_bits(S)]


def _mask(shape: GridShape, points: Sequence[tuple[int, int]]) -> SubsetMask:
    mask = 0
    for i, j in points:
        mask |= 1 << shape.index(i, j)
    return mask


@dataclass(frozen=True)
class SubsetClass:
    empty: bool
    straight: bool
    skew: bool
    left_injective: bool
    right_injective: bool
    doubly_injective: bool
    chain: bool
    is_retract: bool


def classify_subset(shape: GridShape, S: SubsetMask) -> SubsetClass:
    points = _points(shape, S)
    xs = {i for i, _ in points}
    ys = {j for _, j in points}
    straight = len(points) == len(xs) * len(ys)
    left = len(xs) == len(points)
    right = len(ys) == len(points)
    ordered = sorted(points)
    is_chain = all(a[1] <= b[1] for a, b in zip(ordered, ordered[1:]))
    skew = not straight
    return SubsetClass(
        empty=not points,
        straight=straight,
        skew=skew,
        left_injective=left,
        right_injective=right,
        doubly_injective=left and right,
        chain=is_chain,
        is_retract=straight or (is_chain and (left or right)),
    )


def _require_grid(shape: GridShape) -> None:
    if not shape.is_grid:
        raise InvalidShape(f"Grid formulas need m, n >= 2, got ({shape.m}, {shape.n})")


def left_injective_chains(shape: GridShape, s: int) -> Iterator[SubsetMask]:
    """All ``s``-element left injective chains, straight ones included."""
    for xs in combinations(range(shape.m), s):
        for ys in combinations_with_replacement(range(shape.n), s):
            yield _mask(shape, list(zip(xs, ys)))


def grid_retracts(
    shape: GridShape, cap: int = DEFAULT_GRID_RETRACT_CAP
) -> Iterator[SubsetMask]:
    """
    Stream every nonempty retract of the grid exactly once.

    Straight subsets come first, then the left injective skew chains, then
    the right injective skew chains that are not doubly injective.

    Raises:
        InvalidShape: if ``m < 2`` or ``n < 2``.
        SizeLimit: if ``m * n`` exceeds ``cap``.
    """
    _require_grid(shape)
    if shape.size > cap:
        raise SizeLimit("grid retract enumeration", shape.size, cap, "RETRACTLAB_GRID_MAX_MN")
    m, n = shape.m, shape.n
    rows = [_mask(shape, [(i, j) for j in range(n)]) for i in range(m)]
    cols = [_mask(shape, [(i, j) for i in range(m)]) for j in range(n)]
    for xmask in range(1, 1 << m):
        band = 0
        for i in iter_bits(xmask):
            band |= rows[i]
        for ymask in range(1, 1 << n):
            cross = 0
            for j in iter_bits(ymask):
                cross |= cols[j]
            yield band & cross
    for s in range(2, max(m, n) + 1):
        for xs in combinations(range(m), s):
            for ys in combinations_with_replacement(range(n), s):
                if ys[0] == ys[-1]:
                    continue
                yield _mask(shape, list(zip(xs, ys)))
        for ys in combinations(range(n), s):
            for xs in combinations_with_replacement(range(m), s):
                if xs[0] == xs[-1] or len(set(xs)) == s:
                    continue
                yield _mask(shape, list(zip(xs, ys)))


def binomial(a: int, b: int) -> int:
    """``C(a, b)``, zero when ``b > a``."""
    if a < 0 or b < 0:
        raise ValueError(f"binomial({a}, {b}) needs nonnegative arguments")
    return math.comb(a, b)


def count_straight(shape: GridShape) -> int:
    """Straight subsets, the empty set included."""
    return 1 + (2**shape.m - 1) * (2**shape.n - 1)


def count_injective_skew_chains(shape: GridShape) -> int:
    m, n = shape.m, shape.n
    total = 0
    for s in range(2, max(m, n) + 1):
        total += (
            binomial(m, s) * binomial(n + s - 1, s)
            + binomial(n, s) * binomial(m + s - 1, s)
            - binomial(m, s) * binomial(n, s)
            - n * binomial(m, s)
            - m * binomial(n, s)
        )
    return total


def count_retracts(shape: GridShape) -> tuple[int, int, int]:
    """
    ``(|sts G|, |isc G|, |Ret G|)``, each counting the empty set where it belongs.

    Raises:
        InvalidShape: if ``m < 2`` or ``n < 2``.
    """
    _require_grid(shape)
    sts = count_straight(shape)
    isc = count_injective_skew_chains(shape)
    logger.debug(f"Counted retracts of G({shape.m},{shape.n})")
    return sts, isc, sts + isc


def count_chain_retracts(k: int) -> int:
    """``|Ret C_k|``: every subset of a chain is a retract or empty."""
    if k < 1:
        raise InvalidShape(f"A chain needs at least one element, got {k}")
    return 2**k


def count_any(shape: GridShape) -> tuple[int, int, int]:
    """Like :func:`count_retracts`, routing chain shapes to the powerset rule."""
    if shape.is_grid:
        return count_retracts(shape)
    total = count_chain_retracts(shape.size)
    return total, 0, total


def scientific(value: int, digits: int = 7) -> str:
    """
    Round a nonnegative integer to ``digits`` significant digits, exactly.

    Returns ``"<mantissa>e<exponent>"``, e.g. ``scientific(123456, 3) == "1.23e5"``.
    Halves round up.
    """
    if value < 0:
        raise ValueError("scientific() takes nonnegative integers")
    if digits < 1:
        raise ValueError("digits must be positive")
    if value == 0:
        return "0"
    text = str(value)
    exponent = len(text) - 1
    if len(text) > digits:
        scale = 10 ** (len(text) - digits)
        q, r = divmod(value, scale)
        if 2 * r >= scale:
            q += 1
        if q == 10**digits:
            q //= 10
            exponent += 1
        text = str(q)
    mantissa = text[0] + ("." + text[1:] if len(text) > 1 else "")
    return f"{mantissa}e{exponent}"


def maximal_chains(shape: GridShape) -> tuple[list[SubsetMask], list[SubsetMask]]:
    """
    Two maximal chains of ``Ret G``, with ``max(m, n) + 2`` and ``m + n`` members.

    ``H1`` grows a diagonal chain from the bottom and then widens it to full
    rows (or columns when ``m > n``); ``H2`` grows the down-set
    ``↓c_i x ↓d_0`` and then widens it column by column.

    Raises:
        InvalidShape: if ``m < 2`` or ``n < 2``.
    """
    _require_grid(shape)
    m, n = shape.m, shape.n

    def box(i: int, j: int) -> SubsetMask:
        return _mask(shape, [(a, b) for a in range(i + 1) for b in range(j + 1)])

    short = min(m, n)
    h1 = [0]
    for k in range(1, short + 1):
        h1.append(_mask(shape, [(i, i) for i in range(k)]))
    if m <= n:
        h1.extend(box(m - 1, j) for j in range(m - 1, n))
    else:
        h1.extend(box(i, n - 1) for i in range(n - 1, m))

    h2 = [0]
    h2.extend(box(i, 0) for i in range(m))
    h2.extend(box(m - 1, j) for j in range(1, n))
    return h1, h2

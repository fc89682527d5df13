"""
Finite lattices.

A lattice with ``n`` elements uses the indices ``0..n-1``. Construction
derives the order, the cover relation and full meet/join tables once, so every
later computation can treat the lattice operations as table lookups.

Internally each element carries two bitmasks: ``up[x]`` (the elements above or
equal to ``x``) and ``down[x]`` (those below or equal). The least upper bound
of ``a`` and ``b`` is the unique ``u`` with ``up[u] == up[a] & up[b]``; the
greatest lower bound is found the same way from the ``down`` masks.

Example:
    m3 = lattice_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    assert meet_join(m3, 1, 2) == (0, 4)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence

import numpy as np

from algebra.errors import (
    IndexOutOfRange,
    LatticeError,
    NotALattice,
    NotAPoset,
    SizeLimit,
)
from logger import get_logger
from models.lattice_spec import LatticeSpec
from utils.bits import SubsetMask, full_mask, iter_bits, popcount

logger = get_logger(__name__)

DEFAULT_PRODUCT_CAP = 4096

Coords = tuple[int, int]


def _mask_to_row(mask: int, n: int) -> np.ndarray:
    row = np.zeros(n, dtype=bool)
    for i in iter_bits(mask):
        row[i] = True
    return row


def _row_to_mask(row: np.ndarray) -> int:
    packed = np.packbits(row.astype(bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


class Lattice:
    """
    Immutable finite lattice.

    Use :func:`lattice_from_covers`, :meth:`Lattice.from_leq` or one of the
    product/catalog constructors instead of calling ``__init__`` directly;
    the constructor trusts its tables.

    Attributes:
        n: number of elements
        up, down: per-element up-set / down-set masks
        bottom, top: indices of the least and the greatest element
        labels: optional element names
        coords: optional ``(i, j)`` coordinates when built as a product
    """

    def __init__(
        self,
        up: Sequence[int],
        down: Sequence[int],
        meet: Sequence[Sequence[int]],
        join: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        coords: Sequence[Coords] | None = None,
    ):
        self.n = len(up)
        self.up: tuple[int, ...] = tuple(up)
        self.down: tuple[int, ...] = tuple(down)
        self._meet = [list(row) for row in meet]
        self._join = [list(row) for row in join]
        self.labels: tuple[str, ...] | None = tuple(labels) if labels else None
        self.coords: tuple[Coords, ...] | None = tuple(coords) if coords else None
        full = full_mask(self.n)
        self.bottom = next(x for x in range(self.n) if self.up[x] == full)
        self.top = next(x for x in range(self.n) if self.down[x] == full)

    # Construction

    @classmethod
    def from_masks(
        cls,
        up: Sequence[int],
        down: Sequence[int],
        labels: Sequence[str] | None = None,
        coords: Sequence[Coords] | None = None,
    ) -> "Lattice":
        """Build a lattice from a validated partial order given as masks.

        Raises:
            NotALattice: with the first pair (in index order) lacking a
                least upper bound or a greatest lower bound.
        """
        n = len(up)
        up_index = {mask: x for x, mask in enumerate(up)}
        down_index = {mask: x for x, mask in enumerate(down)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            meet[a][a] = join[a][a] = a
            for b in range(a + 1, n):
                j = up_index.get(up[a] & up[b])
                if j is None:
                    raise NotALattice((a, b), "join")
                m = down_index.get(down[a] & down[b])
                if m is None:
                    raise NotALattice((a, b), "meet")
                join[a][b] = join[b][a] = j
                meet[a][b] = meet[b][a] = m
        return cls(up, down, meet, join, labels, coords)

    @classmethod
    def from_leq(
        cls,
        leq: np.ndarray | Sequence[Sequence[bool]],
        labels: Sequence[str] | None = None,
        coords: Sequence[Coords] | None = None,
    ) -> "Lattice":
        """Build a lattice from an ``n x n`` order matrix (``leq[i, j]`` iff i <= j).

        Raises:
            NotAPoset: if the relation is not reflexive, antisymmetric and
                transitive.
            NotALattice: if some pair lacks a meet or a join.
        """
        rel = np.asarray(leq, dtype=bool)
        n = rel.shape[0]
        if n == 0 or rel.shape != (n, n):
            raise NotAPoset(f"Order matrix must be square and nonempty, got {rel.shape}")
        if not rel[np.diag_indices(n)].all():
            raise NotAPoset("Order relation is not reflexive")
        if (rel & rel.T).sum() > n:
            raise NotAPoset("Order relation is not antisymmetric")
        up = [_row_to_mask(rel[i, :]) for i in range(n)]
        down = [_row_to_mask(rel[:, i]) for i in range(n)]
        for x in range(n):
            for y in iter_bits(up[x]):
                if up[y] & ~up[x]:
                    raise NotAPoset("Order relation is not transitive")
        return cls.from_masks(up, down, labels, coords)

    # Lattice operations

    def meet(self, a: int, b: int) -> int:
        return self._meet[a][b]

    def join(self, a: int, b: int) -> int:
        return self._join[a][b]

    def le(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def comparable(self, a: int, b: int) -> bool:
        return bool((self.up[a] | self.down[a]) >> b & 1)

    def check_index(self, *elements: int) -> None:
        for x in elements:
            if not 0 <= x < self.n:
                raise IndexOutOfRange(f"Element {x} is not in 0..{self.n - 1}")

    # Derived structure

    @property
    def full(self) -> SubsetMask:
        return full_mask(self.n)

    @cached_property
    def leq(self) -> np.ndarray:
        """Read-only boolean order matrix."""
        rel = np.stack([_mask_to_row(m, self.n) for m in self.up])
        rel.flags.writeable = False
        return rel

    @cached_property
    def meet_table(self) -> np.ndarray:
        table = np.array(self._meet, dtype=np.int64)
        table.flags.writeable = False
        return table

    @cached_property
    def join_table(self) -> np.ndarray:
        table = np.array(self._join, dtype=np.int64)
        table.flags.writeable = False
        return table

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        result = []
        for y in range(self.n):
            below = self.down[y] ^ (1 << y)
            result.append(
                tuple(
                    x
                    for x in iter_bits(below)
                    if self.up[x] & self.down[y] == (1 << x) | (1 << y)
                )
            )
        return tuple(result)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        result: list[list[int]] = [[] for _ in range(self.n)]
        for y, lows in enumerate(self.lower_covers):
            for x in lows:
                result[x].append(y)
        return tuple(tuple(sorted(r)) for r in result)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs ``(lower, upper)`` sorted by lower then upper."""
        return tuple(
            sorted((x, y) for y, lows in enumerate(self.lower_covers) for x in lows)
        )

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Elements ordered so that ``x < y`` implies ``x`` comes first."""
        return tuple(sorted(range(self.n), key=lambda x: (popcount(self.down[x]), x)))

    @property
    def is_chain(self) -> bool:
        return all((self.up[x] | self.down[x]) == self.full for x in range(self.n))

    def interval(self, a: int, b: int) -> SubsetMask:
        return self.up[a] & self.down[b]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def element(self, ref: int | str) -> int:
        """Resolve an element by index or by label."""
        if isinstance(ref, int):
            self.check_index(ref)
            return ref
        if self.labels and ref in self.labels:
            return self.labels.index(ref)
        if ref.isdigit():
            return self.element(int(ref))
        raise IndexOutOfRange(f"No element labelled {ref!r}")

    def mask(self, refs: Iterable[int | str]) -> SubsetMask:
        mask = 0
        for ref in refs:
            mask |= 1 << self.element(ref)
        return mask

    def format_mask(self, mask: SubsetMask) -> str:
        return "{" + ", ".join(self.label(x) for x in iter_bits(mask)) + "}"

    # Serialization

    def to_spec(self) -> LatticeSpec:
        return LatticeSpec(
            n=self.n,
            covers=list(self.covers),
            labels=list(self.labels) if self.labels else None,
        )

    @classmethod
    def from_spec(cls, spec: LatticeSpec) -> "Lattice":
        return lattice_from_covers(spec.n, spec.covers, spec.labels)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.up == other.up

    def __hash__(self) -> int:
        return hash(self.up)

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, covers={list(self.covers)})"


@dataclass(frozen=True)
class StructuralFlags:
    is_chain: bool
    is_distributive: bool
    is_modular: bool


def lattice_from_covers(
    n: int,
    covers: Iterable[Sequence[int]],
    labels: Sequence[str] | None = None,
) -> Lattice:
    """
    Build and validate a lattice from a cover relation.

    The pairs do not have to be minimal: any relation whose reflexive-transitive
    closure is the intended order is accepted, and the true covers are
    recomputed.

    Raises:
        IndexOutOfRange: for indices outside ``0..n-1``.
        NotAPoset: if the relation has a cycle.
        NotALattice: if some pair has no unique meet or join.
    """
    if n < 1:
        raise LatticeError("A lattice needs at least one element")
    if labels is not None and len(labels) != n:
        raise LatticeError(f"Expected {n} labels, got {len(labels)}")
    below: dict[int, set[int]] = {x: set() for x in range(n)}
    for pair in covers:
        lo, hi = int(pair[0]), int(pair[1])
        for x in (lo, hi):
            if not 0 <= x < n:
                raise IndexOutOfRange(f"Cover ({lo}, {hi}) uses an index outside 0..{n - 1}")
        if lo == hi:
            raise NotAPoset(f"Cover ({lo}, {hi}) is a loop")
        below[hi].add(lo)
    try:
        order = list(TopologicalSorter(below).static_order())
    except CycleError as e:
        raise NotAPoset(f"Cover relation has a cycle through {e.args[1]}") from e
    down = [0] * n
    for x in order:
        mask = 1 << x
        for y in below[x]:
            mask |= down[y]
        down[x] = mask
    up = [0] * n
    for y in range(n):
        for x in iter_bits(down[y]):
            up[x] |= 1 << y
    return Lattice.from_masks(up, down, labels)


def chain(k: int) -> Lattice:
    """The ``k``-element chain ``0 < 1 < ... < k-1``."""
    if k < 1:
        raise LatticeError("A chain needs at least one element")
    up = [full_mask(k) ^ full_mask(i) for i in range(k)]
    down = [full_mask(i + 1) for i in range(k)]
    meet = [[min(a, b) for b in range(k)] for a in range(k)]
    join = [[max(a, b) for b in range(k)] for a in range(k)]
    return Lattice(up, down, meet, join)


def meet_join(L: Lattice, a: int, b: int) -> tuple[int, int]:
    L.check_index(a, b)
    return L.meet(a, b), L.join(a, b)


def is_distributive(L: Lattice) -> bool:
    """Check ``x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`` over all triples."""
    m, j = L._meet, L._join
    for x in range(L.n):
        mx = m[x]
        for y in range(L.n):
            jy = j[y]
            for z in range(y + 1, L.n):
                if mx[jy[z]] != j[mx[y]][mx[z]]:
                    return False
    return True


def is_modular(L: Lattice) -> bool:
    """Check ``x <= z`` implies ``x ∨ (y ∧ z) = (x ∨ y) ∧ z`` over all triples."""
    m, j = L._meet, L._join
    for x in range(L.n):
        for z in iter_bits(L.up[x]):
            for y in range(L.n):
                if j[x][m[y][z]] != m[j[x][y]][z]:
                    return False
    return True


def structural_flags(L: Lattice) -> StructuralFlags:
    distributive = is_distributive(L)
    return StructuralFlags(
        is_chain=L.is_chain,
        is_distributive=distributive,
        is_modular=distributive or is_modular(L),
    )


def join_irreducibles(L: Lattice) -> list[int]:
    """Elements with exactly one lower cover."""
    down_index = set(L.down)
    return [
        x
        for x in range(L.n)
        if x != L.bottom and (L.down[x] ^ (1 << x)) in down_index
    ]


def count_down_sets(L: Lattice, elements: Sequence[int], limit: int) -> int:
    """Count down-sets of the subposet on ``elements``; stops past ``limit``."""
    order = sorted(elements, key=lambda x: (popcount(L.down[x]), x))
    below = [L.down[x] ^ (1 << x) for x in order]
    count = 0

    def extend(i: int, chosen: int) -> None:
        nonlocal count
        if count > limit:
            return
        if i == len(order):
            count += 1
            return
        extend(i + 1, chosen)
        relevant = below[i] & members
        if relevant & ~chosen == 0:
            extend(i + 1, chosen | (1 << order[i]))

    members = 0
    for x in order:
        members |= 1 << x
    extend(0, 0)
    return count


def is_distributive_birkhoff(L: Lattice) -> bool:
    """
    Distributivity through join-irreducibles.

    Every element is the join of the join-irreducibles below it, so
    ``x -> J(x)`` embeds ``L`` into the down-sets of ``J(L)``; the lattice is
    distributive exactly when that embedding is onto.
    """
    return count_down_sets(L, join_irreducibles(L), L.n) == L.n


def direct_product(L1: Lattice, L2: Lattice, cap: int = DEFAULT_PRODUCT_CAP) -> Lattice:
    """
    Componentwise product; element ``(i, j)`` gets index ``i * |L2| + j``.

    Raises:
        SizeLimit: if ``|L1| * |L2|`` exceeds ``cap``.
    """
    n1, n2 = L1.n, L2.n
    size = n1 * n2
    if size > cap:
        raise SizeLimit("direct product", size, cap, "RETRACTLAB_PRODUCT_MAX_N")
    m1, m2 = L1.meet_table, L2.meet_table
    j1, j2 = L1.join_table, L2.join_table
    meet = (m1[:, None, :, None] * n2 + m2[None, :, None, :]).reshape(size, size)
    join = (j1[:, None, :, None] * n2 + j2[None, :, None, :]).reshape(size, size)
    leq = np.logical_and(L1.leq[:, None, :, None], L2.leq[None, :, None, :]).reshape(
        size, size
    )
    up = [_row_to_mask(leq[i, :]) for i in range(size)]
    down = [_row_to_mask(leq[:, i]) for i in range(size)]
    coords = [(i, j) for i in range(n1) for j in range(n2)]
    labels = [f"({L1.label(i)},{L2.label(j)})" for i, j in coords]
    logger.debug(f"Built direct product of sizes {n1} and {n2}")
    return Lattice(up, down, meet.tolist(), join.tolist(), labels, coords)


def restrict(L: Lattice, mask: SubsetMask) -> Lattice:
    """Subposet of ``L`` on ``mask`` (validated as a lattice in its own order)."""
    members = list(iter_bits(mask))
    new_index = {x: i for i, x in enumerate(members)}

    def remap(m: int) -> int:
        out = 0
        for x in iter_bits(m & mask):
            out |= 1 << new_index[x]
        return out

    up = [remap(L.up[x]) for x in members]
    down = [remap(L.down[x]) for x in members]
    labels = [L.label(x) for x in members] if L.labels else None
    return Lattice.from_masks(up, down, labels)


def dual(L: Lattice) -> Lattice:
    """Dual lattice; index ``i`` becomes ``n - 1 - i``, keeping the bottom first."""
    n = L.n

    def flip(m: int) -> int:
        out = 0
        for x in iter_bits(m):
            out |= 1 << (n - 1 - x)
        return out

    up = [flip(L.down[n - 1 - x]) for x in range(n)]
    down = [flip(L.up[n - 1 - x]) for x in range(n)]
    meet = [[n - 1 - L.join(n - 1 - a, n - 1 - b) for b in range(n)] for a in range(n)]
    join = [[n - 1 - L.meet(n - 1 - a, n - 1 - b) for b in range(n)] for a in range(n)]
    labels = [L.label(n - 1 - x) for x in range(n)] if L.labels else None
    return Lattice(up, down, meet, join, labels)


def is_sublattice(L: Lattice, S: SubsetMask) -> bool:
    """True iff ``S`` is nonempty and closed under meet and join."""
    if S == 0:
        return False
    members = list(iter_bits(S))
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if not (S >> L.meet(a, b) & 1 and S >> L.join(a, b) & 1):
                return False
    return True


def is_narrows(L: Lattice, x: int) -> bool:
    """A narrows is a non-extreme element comparable with every element."""
    L.check_index(x)
    if x in (L.bottom, L.top):
        return False
    return (L.up[x] | L.down[x]) == L.full


def majority_term(L: Lattice, x: int, y: int, z: int) -> int:
    """``(x ∨ y) ∧ (x ∨ z) ∧ (y ∨ z)``."""
    L.check_index(x, y, z)
    return L.meet(L.meet(L.join(x, y), L.join(x, z)), L.join(y, z))

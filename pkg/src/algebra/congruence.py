"""
Congruences and compatible quasiorders of finite lattices.

Congruences are handled as canonical partitions (:class:`Partition`), compatible
quasiorders as row bitmatrices (:class:`Relation`). Both families are closed
under the join "transitive closure of the union", which is what the
enumerations below rely on.

For a direct product ``L1 x L2`` every compatible quasiorder, and hence every
congruence, is a product ``rho1 x rho2`` of relations of the factors;
:func:`factorize_product_relation` computes the factors and checks the
reconstruction.

Only lattices are covered here; the same factorization holds for any algebras
with a majority term, which this module does not model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, overload

from algebra.errors import LatticeError, NotFactorizable, SizeLimit
from algebra.lattice import Lattice
from logger import get_logger
from utils.bits import iter_bits, popcount
from utils.union_find import UnionFind

logger = get_logger(__name__)

DEFAULT_CONGRUENCE_CAP = 64
DEFAULT_QUASIORDER_CAP = 8


@dataclass(frozen=True)
class Partition:
    """
    Equivalence relation in canonical form.

    ``block_of[x]`` is the block id of ``x``; ids are numbered in order of the
    least element of each block, so equal partitions have equal encodings.
    """

    block_of: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "Partition":
        ids: dict[Hashable, int] = {}
        return cls(tuple(ids.setdefault(label, len(ids)) for label in labels))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        labels = list(range(n))
        for block in blocks:
            members = list(block)
            for x in members:
                labels[x] = members[0]
        return cls.from_labels(labels)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def num_blocks(self) -> int:
        return max(self.block_of, default=-1) + 1

    def blocks(self) -> list[list[int]]:
        result: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block_of):
            result[b].append(x)
        return result

    def block_masks(self) -> list[int]:
        result = [0] * self.num_blocks
        for x, b in enumerate(self.block_of):
            result[b] |= 1 << x
        return result

    def nontrivial_blocks(self) -> list[list[int]]:
        return [b for b in self.blocks() if len(b) > 1]

    def same(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def refines(self, other: "Partition") -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        image: dict[int, int] = {}
        for b, c in zip(self.block_of, other.block_of):
            if image.setdefault(b, c) != c:
                return False
        return True

    def join(self, other: "Partition") -> "Partition":
        uf = UnionFind(self.n)
        for part in (self, other):
            for block in part.blocks():
                for x in block[1:]:
                    uf.union(block[0], x)
        return Partition.from_labels(uf.labels())

    def meet(self, other: "Partition") -> "Partition":
        return Partition.from_labels(list(zip(self.block_of, other.block_of)))

    def to_json(self) -> list[list[int]]:
        return self.blocks()

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks())


@dataclass(frozen=True)
class Relation:
    """Binary relation on ``0..n-1``; ``rows[x]`` is the mask of ``y`` with ``x rho y``."""

    rows: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return cls(tuple(1 << x for x in range(n)))

    @classmethod
    def total(cls, n: int) -> "Relation":
        return cls(((1 << n) - 1,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [0] * n
        for x, y in pairs:
            rows[x] |= 1 << y
        return cls(tuple(rows))

    @classmethod
    def from_order(cls, L: Lattice) -> "Relation":
        return cls(L.up)

    @classmethod
    def from_partition(cls, P: Partition) -> "Relation":
        masks = P.block_masks()
        return cls(tuple(masks[b] for b in P.block_of))

    @property
    def n(self) -> int:
        return len(self.rows)

    def contains(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, row in enumerate(self.rows) for y in iter_bits(row)]

    def size(self) -> int:
        return sum(popcount(r) for r in self.rows)

    def issubset(self, other: "Relation") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def is_symmetric(self) -> bool:
        return all(self.contains(y, x) for x, y in self.pairs())

    def to_partition(self) -> Partition:
        """Blocks of an equivalence relation (rows of equal elements coincide)."""
        return Partition.from_labels(list(self.rows))

    def to_bitstring(self) -> str:
        """Row-major ``0``/``1`` string."""
        return "".join(
            "1" if row >> y & 1 else "0" for row in self.rows for y in range(self.n)
        )

    def __str__(self) -> str:
        return self.to_bitstring()


def _check_size(P: Partition | Relation, L: Lattice) -> None:
    if P.n != L.n:
        raise LatticeError(f"Relation is on {P.n} elements but the lattice has {L.n}")


def is_congruence(L: Lattice, P: Partition) -> bool:
    """True iff ``x ≡ y`` implies ``x ∧ z ≡ y ∧ z`` and ``x ∨ z ≡ y ∨ z``."""
    _check_size(P, L)
    block_of = P.block_of
    first: dict[int, int] = {}
    for x in range(L.n):
        rep = first.setdefault(block_of[x], x)
        if rep == x:
            continue
        mx, mr = L._meet[x], L._meet[rep]
        jx, jr = L._join[x], L._join[rep]
        for z in range(L.n):
            if block_of[mx[z]] != block_of[mr[z]] or block_of[jx[z]] != block_of[jr[z]]:
                return False
    return True


def _congruence_closure(L: Lattice, uf: UnionFind) -> Partition:
    m, j = L._meet, L._join
    changed = True
    while changed:
        changed = False
        for x in range(L.n):
            r = uf.find(x)
            if r == x:
                continue
            for z in range(L.n):
                changed |= uf.union(m[x][z], m[r][z])
                changed |= uf.union(j[x][z], j[r][z])
    return Partition.from_labels(uf.labels())


def principal_congruence(L: Lattice, a: int, b: int) -> Partition:
    """Smallest congruence collapsing ``a`` and ``b``."""
    L.check_index(a, b)
    uf = UnionFind(L.n)
    uf.union(a, b)
    return _congruence_closure(L, uf)


def congruence_generated(L: Lattice, pairs: Iterable[tuple[int, int]]) -> Partition:
    uf = UnionFind(L.n)
    for a, b in pairs:
        L.check_index(a, b)
        uf.union(a, b)
    return _congruence_closure(L, uf)


def partition_key(P: Partition) -> tuple[int, tuple[int, ...]]:
    """Canonical order: finer partitions first (Δ first, ∇ last)."""
    return (-P.num_blocks, P.block_of)


def all_congruences(L: Lattice, cap: int = DEFAULT_CONGRUENCE_CAP) -> list[Partition]:
    """
    Every congruence of ``L``.

    Each congruence is a join of principal congruences of covering pairs, so
    the set is the join-closure of those principal congruences together with Δ.

    Raises:
        SizeLimit: if ``L`` has more than ``cap`` elements.
    """
    if L.n > cap:
        raise SizeLimit("congruence enumeration", L.n, cap, "RETRACTLAB_CONGRUENCE_MAX_N")
    principals = sorted(
        {principal_congruence(L, a, b) for a, b in L.covers}, key=partition_key
    )
    found = {Partition.discrete(L.n)}
    frontier = list(found)
    while frontier:
        next_frontier = []
        for theta in frontier:
            for p in principals:
                joined = theta.join(p)
                if joined not in found:
                    found.add(joined)
                    next_frontier.append(joined)
        frontier = next_frontier
    logger.debug(f"Found {len(found)} congruences on {L.n} elements")
    return sorted(found, key=partition_key)


def congruence_lattice(
    L: Lattice, cap: int = DEFAULT_CONGRUENCE_CAP
) -> tuple[Lattice, list[Partition]]:
    """
    ``Con L`` ordered by refinement, with the partition behind each element.

    Element ``i`` of the returned lattice is ``congruences[i]``; the order
    follows :func:`partition_key`, so Δ is the bottom.
    """
    congruences = all_congruences(L, cap)
    leq = [[p.refines(q) for q in congruences] for p in congruences]
    return Lattice.from_leq(leq, labels=[str(p) for p in congruences]), congruences


# Compatible quasiorders


def _quasiorder_closure(L: Lattice, rows: list[int]) -> list[int]:
    """Smallest reflexive, transitive, meet/join-compatible relation containing ``rows``."""
    n = L.n
    m, j = L._meet, L._join
    rows = [rows[x] | (1 << x) for x in range(n)]
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in iter_bits(rows[x]):
                if y == x:
                    continue
                for z in range(n):
                    a, b = m[x][z], m[y][z]
                    if not rows[a] >> b & 1:
                        rows[a] |= 1 << b
                        changed = True
                    a, b = j[x][z], j[y][z]
                    if not rows[a] >> b & 1:
                        rows[a] |= 1 << b
                        changed = True
        for k in range(n):
            bit = 1 << k
            row_k = rows[k]
            for x in range(n):
                if rows[x] & bit and row_k & ~rows[x]:
                    rows[x] |= row_k
                    changed = True
    return rows


def is_compatible_quasiorder(L: Lattice, R: Relation) -> bool:
    _check_size(R, L)
    return list(R.rows) == _quasiorder_closure(L, list(R.rows))


def relation_key(R: Relation) -> tuple[int, tuple[int, ...]]:
    return (R.size(), R.rows)


def all_compatible_quasiorders(
    L: Lattice, cap: int = DEFAULT_QUASIORDER_CAP
) -> list[Relation]:
    """
    Every reflexive, transitive, meet/join-compatible relation of ``L``.

    Depth-first over the off-diagonal pairs: each pair is either excluded or
    included (followed by closure); a branch dies as soon as a closure reaches
    an excluded pair.

    Raises:
        SizeLimit: if ``L`` has more than ``cap`` elements.
    """
    if L.n > cap:
        raise SizeLimit("quasiorder enumeration", L.n, cap, "RETRACTLAB_QUASIORDER_MAX_N")
    n = L.n
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    results: list[Relation] = []

    def search(rows: list[int], excluded: list[int], idx: int) -> None:
        while idx < len(pairs) and rows[pairs[idx][0]] >> pairs[idx][1] & 1:
            idx += 1
        if idx == len(pairs):
            results.append(Relation(tuple(rows)))
            return
        x, y = pairs[idx]
        extended = list(rows)
        extended[x] |= 1 << y
        closed = _quasiorder_closure(L, extended)
        if not any(c & e for c, e in zip(closed, excluded)):
            search(closed, excluded, idx + 1)
        narrowed = list(excluded)
        narrowed[x] |= 1 << y
        search(rows, narrowed, idx + 1)

    search(_quasiorder_closure(L, [0] * n), [0] * n, 0)
    logger.debug(f"Found {len(results)} compatible quasiorders on {n} elements")
    return sorted(results, key=relation_key)


def quasiorder_lattice(
    L: Lattice, cap: int = DEFAULT_QUASIORDER_CAP
) -> tuple[Lattice, list[Relation]]:
    """``Quo L`` ordered by inclusion."""
    relations = all_compatible_quasiorders(L, cap)
    leq = [[r.issubset(s) for s in relations] for r in relations]
    return Lattice.from_leq(leq), relations


# Products


def factor_sizes(Lprod: Lattice) -> tuple[int, int]:
    if Lprod.coords is None:
        raise NotFactorizable("Lattice was not built as a direct product")
    n1 = max(i for i, _ in Lprod.coords) + 1
    n2 = max(j for _, j in Lprod.coords) + 1
    return n1, n2


def relation_product(r1: Relation, r2: Relation) -> Relation:
    """``((x1, x2), (y1, y2))`` related iff ``x1 r1 y1`` and ``x2 r2 y2``."""
    n2 = r2.n
    rows = []
    for x1 in range(r1.n):
        for x2 in range(n2):
            row = 0
            for y1 in iter_bits(r1.rows[x1]):
                row |= r2.rows[x2] << (y1 * n2)
            rows.append(row)
    return Relation(tuple(rows))


def partition_product(p1: Partition, p2: Partition) -> Partition:
    return Partition.from_labels(
        [(b1, b2) for b1 in p1.block_of for b2 in p2.block_of]
    )


def _factor_relation(R: Relation, n1: int, n2: int) -> tuple[Relation, Relation]:
    rows1 = [0] * n1
    rows2 = [0] * n2
    for x1 in range(n1):
        for z in range(n2):
            row = R.rows[x1 * n2 + z]
            for y1 in range(n1):
                if row >> (y1 * n2 + z) & 1:
                    rows1[x1] |= 1 << y1
    for x2 in range(n2):
        for z in range(n1):
            row = R.rows[z * n2 + x2]
            for y2 in range(n2):
                if row >> (z * n2 + y2) & 1:
                    rows2[x2] |= 1 << y2
    return Relation(tuple(rows1)), Relation(tuple(rows2))


@overload
def factorize_product_relation(
    Lprod: Lattice, R: Relation
) -> tuple[Relation, Relation]: ...


@overload
def factorize_product_relation(
    Lprod: Lattice, R: Partition
) -> tuple[Partition, Partition]: ...


def factorize_product_relation(Lprod, R):
    """
    Split a compatible quasiorder (or congruence) of ``L1 x L2`` into factors.

    ``rho1`` relates ``x`` and ``y`` when some ``z`` has ``(x, z) rho (y, z)``;
    ``rho2`` is defined symmetrically. The product of the two is compared with
    the input before returning.

    Raises:
        NotFactorizable: if the input is not compatible, or does not equal the
            product of its factors.
    """
    n1, n2 = factor_sizes(Lprod)
    if isinstance(R, Partition):
        if not is_congruence(Lprod, R):
            raise NotFactorizable("Partition is not a congruence of the product")
        r1, r2 = _factor_relation(Relation.from_partition(R), n1, n2)
        p1, p2 = r1.to_partition(), r2.to_partition()
        if partition_product(p1, p2) != R:
            raise NotFactorizable("Congruence differs from the product of its factors")
        return p1, p2
    if not is_compatible_quasiorder(Lprod, R):
        raise NotFactorizable("Relation is not a compatible quasiorder of the product")
    r1, r2 = _factor_relation(R, n1, n2)
    if relation_product(r1, r2) != R:
        raise NotFactorizable("Relation differs from the product of its factors")
    return r1, r2

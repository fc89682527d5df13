"""
Retractions, retracts and retraction congruences.

A retraction is an idempotent endomorphism ``f``; its image ``f(L)`` is a
retract and its kernel a retraction congruence. Two facts drive everything
here:

* a sublattice ``S`` is a retract iff some congruence has every block meeting
  ``S`` in exactly one element (``S`` is a transversal), and then
  ``x -> the element of S in x's block`` is a retraction onto ``S``;
* a congruence is a retraction congruence iff some sublattice is one of its
  transversals.

``Ret L`` is the set of retracts together with the empty set, ordered by
inclusion. It need not be a lattice; :class:`RetPoset` reports the verdict.

Note: the image of a retraction is also a retract in the projective sense, so
a quotient ``L/Θ`` is isomorphic to a retract exactly when ``Θ`` is a
retraction congruence. Deciding projectivity of a quotient is not attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Literal, Sequence

import numpy as np

from algebra.congruence import (
    DEFAULT_CONGRUENCE_CAP,
    Partition,
    all_congruences,
    factor_sizes,
    is_congruence,
    partition_key,
)
from algebra.errors import (
    LatticeError,
    NotACongruence,
    NotARetract,
    NotARetraction,
    SizeLimit,
)
from algebra.lattice import Lattice
from logger import get_logger
from utils.bits import SubsetMask, is_subset, iter_bits, mask_of, sorted_masks

logger = get_logger(__name__)

DEFAULT_RETRACTION_CAP = 12

Mode = Literal["bruteforce", "transversal"]


@dataclass(frozen=True)
class EndoMap:
    """Total self-map of a lattice; ``image_of[x]`` is the image of ``x``."""

    image_of: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "EndoMap":
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, value: int) -> "EndoMap":
        return cls((value,) * n)

    @property
    def n(self) -> int:
        return len(self.image_of)

    def __call__(self, x: int) -> int:
        return self.image_of[x]

    def image(self) -> SubsetMask:
        return mask_of(self.image_of)

    def fixed_points(self) -> SubsetMask:
        return mask_of(x for x, y in enumerate(self.image_of) if x == y)

    def kernel(self) -> Partition:
        return Partition.from_labels(list(self.image_of))

    def to_json(self) -> list[int]:
        return list(self.image_of)


def is_homomorphism(L: Lattice, f: EndoMap) -> bool:
    if f.n != L.n:
        raise LatticeError(f"Map is defined on {f.n} elements but the lattice has {L.n}")
    img = f.image_of
    if any(not 0 <= y < L.n for y in img):
        return False
    m, j = L._meet, L._join
    for a in range(L.n):
        for b in range(a + 1, L.n):
            if img[m[a][b]] != m[img[a]][img[b]] or img[j[a][b]] != j[img[a]][img[b]]:
                return False
    return True


def is_retraction(L: Lattice, f: EndoMap) -> bool:
    """True iff ``f`` preserves meet and join and ``f(f(x)) = f(x)``."""
    if not is_homomorphism(L, f):
        return False
    return all(f.image_of[y] == y for y in f.image_of)


def _check_cap(L: Lattice, cap: int, what: str) -> None:
    if L.n > cap:
        raise SizeLimit(what, L.n, cap)


def all_retractions(L: Lattice, cap: int = DEFAULT_RETRACTION_CAP) -> list[EndoMap]:
    """
    Every retraction of ``L``, sorted by image array.

    Images are assigned along a linear extension. The candidates for ``x`` are
    the elements above the images of its lower covers; each meet/join identity
    is checked as soon as its three elements have images, and idempotence is
    enforced incrementally.

    Raises:
        SizeLimit: if ``L`` has more than ``cap`` elements.
    """
    _check_cap(L, cap, "retraction enumeration")
    n = L.n
    order = L.linear_extension
    pos = [0] * n
    for k, x in enumerate(order):
        pos[x] = k

    checks: list[list[tuple[int, int, int, bool]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            for c, is_meet in ((L.meet(a, b), True), (L.join(a, b), False)):
                if c in (a, b):
                    continue
                last = max(pos[a], pos[b], pos[c])
                checks[last].append((a, b, c, is_meet))

    img = [-1] * n
    hits = [0] * n
    results: list[EndoMap] = []

    def consistent(k: int) -> bool:
        for a, b, c, is_meet in checks[k]:
            table = L._meet if is_meet else L._join
            if img[c] != table[img[a]][img[b]]:
                return False
        return True

    def search(k: int) -> None:
        if k == n:
            results.append(EndoMap(tuple(img)))
            return
        x = order[k]
        candidates = L.full
        for y in L.lower_covers[x]:
            candidates &= L.up[img[y]]
        if hits[x]:
            candidates &= 1 << x
        for v in iter_bits(candidates):
            if v != x and pos[v] < k and img[v] != v:
                continue
            img[x] = v
            hits[v] += 1
            if consistent(k):
                search(k + 1)
            hits[v] -= 1
        img[x] = -1

    search(0)
    logger.debug(f"Found {len(results)} retractions on {n} elements")
    return sorted(results, key=lambda f: f.image_of)


def _transversals(L: Lattice, P: Partition) -> Iterator[SubsetMask]:
    """
    Sublattices meeting every block of ``P`` exactly once.

    Blocks are visited in increasing size; choosing a representative forces
    the representatives of the blocks containing its meets and joins with the
    elements already chosen.
    """
    block_of = P.block_of
    blocks = sorted(P.blocks(), key=lambda b: (len(b), b))
    k = len(blocks)
    m, j = L._meet, L._join

    def propagate(rep: list[int], x: int) -> list[int] | None:
        rep = list(rep)
        rep[block_of[x]] = x
        chosen = [x]
        chosen.extend(r for r in rep if r >= 0 and r != x)
        queue = [x]
        while queue:
            x = queue.pop()
            for s in list(chosen):
                for v in (m[x][s], j[x][s]):
                    b = block_of[v]
                    if rep[b] < 0:
                        rep[b] = v
                        chosen.append(v)
                        queue.append(v)
                    elif rep[b] != v:
                        return None
        return rep

    def search(rep: list[int], i: int) -> Iterator[SubsetMask]:
        while i < k and rep[block_of[blocks[i][0]]] >= 0:
            i += 1
        if i == k:
            yield mask_of(rep)
            return
        for x in blocks[i]:
            extended = propagate(rep, x)
            if extended is not None:
                yield from search(extended, i + 1)

    yield from search([-1] * P.num_blocks, 0)


def is_retraction_congruence(L: Lattice, theta: Partition) -> tuple[bool, SubsetMask | None]:
    """
    Decide whether ``theta`` is the kernel of a retraction.

    Returns ``(True, S)`` with a sublattice ``S`` that is a transversal of
    ``theta``, or ``(False, None)``.

    Raises:
        NotACongruence: if ``theta`` is not a congruence of ``L``.
    """
    if not is_congruence(L, theta):
        raise NotACongruence(f"Partition {theta.to_json()} is not a congruence")
    witness = next(_transversals(L, theta), None)
    return witness is not None, witness


def retraction_from_transversal(L: Lattice, theta: Partition, S: SubsetMask) -> EndoMap:
    """
    The retraction sending each element to the member of ``S`` in its block.

    Raises:
        NotARetract: if some block does not meet ``S`` exactly once.
        NotARetraction: if the resulting map is not a homomorphism.
    """
    rep: dict[int, int] = {}
    for x in iter_bits(S):
        b = theta.block_of[x]
        if b in rep:
            raise NotARetract(f"Block {b} meets {L.format_mask(S)} more than once")
        rep[b] = x
    if len(rep) != theta.num_blocks:
        raise NotARetract(f"{L.format_mask(S)} misses a block of the congruence")
    f = EndoMap(tuple(rep[b] for b in theta.block_of))
    if not is_retraction(L, f):
        raise NotARetraction(f"{L.format_mask(S)} is not a sublattice transversal")
    return f


def retracts(
    L: Lattice,
    mode: Mode = "bruteforce",
    cap: int = DEFAULT_RETRACTION_CAP,
    congruence_cap: int = DEFAULT_CONGRUENCE_CAP,
) -> list[SubsetMask]:
    """
    Every nonempty retract of ``L``, smallest first.

    ``bruteforce`` collects the images of :func:`all_retractions`;
    ``transversal`` collects the sublattice transversals of every congruence.
    Both give the same set.
    """
    _check_cap(L, cap, "retract enumeration")
    if mode == "bruteforce":
        return sorted_masks(f.image() for f in all_retractions(L, cap))
    if mode == "transversal":
        found: set[SubsetMask] = set()
        for theta in all_congruences(L, congruence_cap):
            found.update(_transversals(L, theta))
        return sorted_masks(found)
    raise ValueError(f"Unknown mode {mode!r}")


def rcon(
    L: Lattice,
    mode: Mode = "transversal",
    cap: int = DEFAULT_RETRACTION_CAP,
    congruence_cap: int = DEFAULT_CONGRUENCE_CAP,
) -> list[Partition]:
    """Retraction congruences of ``L`` in canonical partition order."""
    _check_cap(L, cap, "retraction congruence enumeration")
    if mode == "bruteforce":
        kernels = {f.kernel() for f in all_retractions(L, cap)}
    elif mode == "transversal":
        kernels = {
            theta
            for theta in all_congruences(L, congruence_cap)
            if next(_transversals(L, theta), None) is not None
        }
    else:
        raise ValueError(f"Unknown mode {mode!r}")
    return sorted(kernels, key=partition_key)


class RetPoset:
    """
    Retracts of a lattice together with the empty set, ordered by inclusion.

    ``elements[0]`` is the empty set and ``elements[-1]`` the whole lattice.
    ``meet``/``join`` take and return indices into ``elements`` and answer
    ``None`` when the bound does not exist.
    """

    def __init__(self, lattice: Lattice, members: Sequence[SubsetMask]):
        self.lattice = lattice
        self.elements: list[SubsetMask] = sorted_masks([0, *members])
        self.index = {mask: i for i, mask in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def order(self) -> np.ndarray:
        """Inclusion matrix; ``order[i, j]`` iff ``elements[i] ⊆ elements[j]``."""
        rel = np.array(
            [[is_subset(s, t) for t in self.elements] for s in self.elements], dtype=bool
        )
        rel.flags.writeable = False
        return rel

    def meet(self, i: int, j: int) -> int | None:
        bound = self.elements[i] & self.elements[j]
        if bound in self.index:
            return self.index[bound]
        union = 0
        for u in self.elements:
            if is_subset(u, bound):
                union |= u
        return self.index.get(union)

    def join(self, i: int, j: int) -> int | None:
        bound = self.elements[i] | self.elements[j]
        if bound in self.index:
            return self.index[bound]
        common = self.lattice.full
        for u in self.elements:
            if is_subset(bound, u):
                common &= u
        return self.index.get(common)

    @cached_property
    def _verdict(self) -> tuple[bool, tuple[SubsetMask, SubsetMask] | None]:
        # Missing meets are reported before missing joins.
        k = len(self.elements)
        for bound in (self.meet, self.join):
            for i in range(k):
                for j in range(i + 1, k):
                    if bound(i, j) is None:
                        return False, (self.elements[i], self.elements[j])
        return True, None

    @property
    def is_lattice(self) -> bool:
        return self._verdict[0]

    @property
    def witness(self) -> tuple[SubsetMask, SubsetMask] | None:
        """Least pair lacking a meet, else least pair lacking a join."""
        return self._verdict[1]

    def meets_are_intersections(self) -> bool:
        return all(
            s & t in self.index for s in self.elements for t in self.elements
        )

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        result = []
        rel = self.order
        for i in range(len(self.elements)):
            for j in range(len(self.elements)):
                if i == j or not rel[i, j]:
                    continue
                between = rel[i, :] & rel[:, j]
                if between.sum() == 2:
                    result.append((i, j))
        return result

    def is_maximal_chain(self, chain: Sequence[SubsetMask]) -> bool:
        """True iff ``chain`` runs from ∅ to the whole lattice through covers of this poset."""
        if not chain or chain[0] != 0 or chain[-1] != self.lattice.full:
            return False
        if any(mask not in self.index for mask in chain):
            return False
        cover_set = set(self.covers)
        return all(
            (self.index[a], self.index[b]) in cover_set for a, b in zip(chain, chain[1:])
        )

    def to_lattice(self) -> Lattice:
        """The poset as a :class:`Lattice`.

        Raises:
            NotALattice: when :attr:`is_lattice` is false.
        """
        labels = [self.lattice.format_mask(mask) for mask in self.elements]
        return Lattice.from_leq(self.order, labels=labels)


def ret_poset(
    L: Lattice,
    cap: int = DEFAULT_RETRACTION_CAP,
    mode: Mode = "bruteforce",
    congruence_cap: int = DEFAULT_CONGRUENCE_CAP,
) -> RetPoset:
    return RetPoset(L, retracts(L, mode, cap, congruence_cap))


def product_retraction(L1: Lattice, f1: EndoMap, L2: Lattice, f2: EndoMap) -> EndoMap:
    """
    ``(x1, x2) -> (f1(x1), f2(x2))`` on ``L1 x L2`` indexed as in ``direct_product``.

    Raises:
        NotARetraction: if either factor is not a retraction.
    """
    for i, (L, f) in enumerate(((L1, f1), (L2, f2)), start=1):
        if not is_retraction(L, f):
            raise NotARetraction(f"Factor {i} map {f.to_json()} is not a retraction")
    n2 = L2.n
    return EndoMap(tuple(f1(x1) * n2 + f2(x2) for x1 in range(L1.n) for x2 in range(n2)))


def split_retraction(Lprod: Lattice, f: EndoMap) -> tuple[EndoMap, EndoMap]:
    """
    Factor retractions ``f1 = π1 ∘ f ∘ ι1`` and ``f2 = π2 ∘ f ∘ ι2``.

    ``ι1`` pads with the bottom of the second factor and ``ι2`` with the
    bottom of the first. Both results are retractions and
    ``ker f = ker f1 x ker f2``.

    Raises:
        NotARetraction: if ``f`` is not a retraction of ``Lprod``.
    """
    if not is_retraction(Lprod, f):
        raise NotARetraction(f"Map {f.to_json()} is not a retraction")
    n1, n2 = factor_sizes(Lprod)
    assert Lprod.coords is not None
    c1, c2 = Lprod.coords[Lprod.bottom]
    f1 = EndoMap(tuple(Lprod.coords[f(x * n2 + c2)][0] for x in range(n1)))
    f2 = EndoMap(tuple(Lprod.coords[f(c1 * n2 + y)][1] for y in range(n2)))
    return f1, f2

"""
Lattices with ``n`` elements, one per isomorphism class.

Removing a coatom from a lattice with at least three elements leaves a
lattice, so every ``n``-element lattice arises from an ``(n-1)``-element one
by adding a new coatom ``c``. The elements strictly below ``c`` form a
down-set ``D`` of ``L \\ {1}``; the extension is a lattice exactly when every
``D ∩ ↓x`` (``x != 1``) has a greatest element, which
:meth:`Lattice.from_masks` checks while building the tables.

Representatives keep the bottom at index 0 and the top at index ``n-1``; the
new coatom takes the index of the old top. Duplicates are removed by hashing
the Hasse diagram (Weisfeiler-Lehman) and confirming with a full
isomorphism test.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator

import networkx as nx

from algebra.errors import InvalidShape, NotALattice, NotAPoset, SizeLimit
from algebra.lattice import Lattice, chain, lattice_from_covers
from logger import get_logger
from utils.bits import SubsetMask, full_mask, iter_bits

logger = get_logger(__name__)

DEFAULT_ENUMERATE_CAP = 9

# Number of lattices with n elements up to isomorphism, n = 1..9.
KNOWN_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53, 8: 222, 9: 1078}


def hasse_graph(L: Lattice) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(L.n))
    graph.add_edges_from(L.covers)
    return graph


class IsomorphismFilter:
    """Keeps the first lattice of every isomorphism class it is shown."""

    def __init__(self) -> None:
        self.buckets: dict[str, list[nx.DiGraph]] = {}

    def add(self, L: Lattice) -> bool:
        """Record ``L``; returns False if an isomorphic lattice was seen before."""
        graph = hasse_graph(L)
        key = f"{L.n}:{nx.weisfeiler_lehman_graph_hash(graph)}"
        bucket = self.buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            return False
        bucket.append(graph)
        return True


def _down_sets(L: Lattice, within: SubsetMask) -> Iterator[SubsetMask]:
    """Nonempty down-sets of the subposet on ``within``."""
    order = [x for x in L.linear_extension if within >> x & 1]

    def extend(i: int, chosen: SubsetMask) -> Iterator[SubsetMask]:
        if i == len(order):
            if chosen:
                yield chosen
            return
        x = order[i]
        yield from extend(i + 1, chosen)
        below = L.down[x] & within & ~(1 << x)
        if below & ~chosen == 0:
            yield from extend(i + 1, chosen | (1 << x))

    yield from extend(0, 0)


def coatom_extensions(L: Lattice) -> Iterator[Lattice]:
    """Every lattice obtained from ``L`` by adding one new coatom."""
    n = L.n + 1
    old_top = L.top
    new = n - 2
    assert old_top == L.n - 1, "representatives keep the top last"
    for below in _down_sets(L, L.full ^ (1 << old_top)):
        down = [L.down[x] for x in range(L.n - 1)]
        down.append(below | (1 << new))
        down.append(full_mask(n))
        up = [0] * n
        for y, mask in enumerate(down):
            for x in iter_bits(mask):
                up[x] |= 1 << y
        try:
            yield Lattice.from_masks(up, down)
        except NotALattice:
            continue


def enumerate_lattices(n: int, cap: int = DEFAULT_ENUMERATE_CAP) -> list[Lattice]:
    """
    One lattice per isomorphism class of ``n``-element lattices.

    Raises:
        InvalidShape: if ``n < 1``.
        SizeLimit: if ``n`` exceeds ``cap``.
    """
    if n < 1:
        raise InvalidShape(f"Lattice size must be positive, got {n}")
    if n > cap:
        raise SizeLimit("lattice enumeration", n, cap, "RETRACTLAB_ENUMERATE_MAX_N")
    if n <= 3:
        return [chain(n)]
    level = [chain(3)]
    for size in range(4, n + 1):
        seen = IsomorphismFilter()
        level = [ext for parent in level for ext in coatom_extensions(parent) if seen.add(ext)]
        logger.debug(f"{len(level)} lattices with {size} elements")
    return level


def labeled_lattice_count(n: int) -> int:
    """
    Count ``n``-element lattices up to isomorphism by brute force.

    Every poset on the middle elements that extends index order is tried;
    duplicates are removed by the smallest relabelled cover set. Only
    practical for ``n <= 7``.
    """
    if n < 1:
        raise InvalidShape(f"Lattice size must be positive, got {n}")
    if n <= 2:
        return 1
    middle = list(range(1, n - 1))
    pairs = list(combinations(middle, 2))
    forms: set[tuple[tuple[int, int], ...]] = set()
    for bits in range(1 << len(pairs)):
        relation = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        covers = [(0, x) for x in middle] + [(x, n - 1) for x in middle] + relation
        try:
            L = lattice_from_covers(n, covers)
        except (NotALattice, NotAPoset):
            continue
        inner = [c for c in L.covers if c[0] != 0 and c[1] != n - 1]
        best = None
        for perm in permutations(middle):
            relabel = {0: 0, n - 1: n - 1, **dict(zip(middle, perm))}
            form = tuple(sorted((relabel[a], relabel[b]) for a, b in inner))
            if best is None or form < best:
                best = form
        assert best is not None
        forms.add(best)
    return len(forms)

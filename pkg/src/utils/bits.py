"""
Helpers for subset masks.

A subset of a lattice with ``n`` elements is an ``int`` whose bit ``i`` is set
when element ``i`` belongs to the subset.
"""

from typing import Iterable, Iterator

SubsetMask = int


def mask_of(elements: Iterable[int]) -> SubsetMask:
    """Build a mask from element indices."""
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def iter_bits(mask: SubsetMask) -> Iterator[int]:
    """Yield the indices set in ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def elements_of(mask: SubsetMask) -> list[int]:
    return list(iter_bits(mask))


def popcount(mask: SubsetMask) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> SubsetMask:
    return (1 << n) - 1


def is_subset(a: SubsetMask, b: SubsetMask) -> bool:
    return a & ~b == 0


def mask_key(mask: SubsetMask) -> tuple[int, list[int]]:
    """Sort key: smaller subsets first, then lexicographic by element list."""
    return (popcount(mask), elements_of(mask))


def sorted_masks(masks: Iterable[SubsetMask]) -> list[SubsetMask]:
    return sorted(set(masks), key=mask_key)

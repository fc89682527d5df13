"""
Extended absorption properties of retracts.

A property is a pattern lattice ``K`` with two marked sets, the bullets and
the stars, and a constraint on embeddings. The retracts of ``L`` satisfy it
when, for every admissible embedding ``g: K -> L`` and every retract ``S``,
``g(bullets) ⊆ S`` implies ``g(stars) ⊆ S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from algebra.errors import (
    IndexOutOfRange,
    NotARetract,
    PropertyFileError,
    SizeLimit,
    UnknownName,
)
from algebra.lattice import Lattice, is_narrows, lattice_from_covers
from algebra.retraction import DEFAULT_RETRACTION_CAP, retracts
from logger import get_logger
from models.absorption_spec import AbsorptionPropertySpec, GammaSpec
from utils.bits import SubsetMask, elements_of, is_subset, iter_bits, mask_of

logger = get_logger(__name__)

Embedding = tuple[int, ...]

GLUED_SQUARES_COVERS = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)]
GLUED_SQUARES_LABELS = ["0", "a1", "a2", "y", "b1", "b2", "1"]
GLUED_SQUARES_MIDDLE = 3


@dataclass(frozen=True)
class AbsorptionProperty:
    K: Lattice
    bullets: SubsetMask
    stars: SubsetMask
    narrows: int | None = None
    name: str = "custom"
    description: str | None = None

    @classmethod
    def from_spec(cls, spec: AbsorptionPropertySpec, name: str = "custom") -> "AbsorptionProperty":
        """
        Raises:
            PropertyFileError: if the pattern is missing or an index is invalid.
        """
        if spec.K is None:
            raise PropertyFileError(
                f"Property {name!r} has no pattern lattice; fill in \"K\" before checking it"
            )
        K = Lattice.from_spec(spec.K)
        try:
            K.check_index(*spec.bullets, *spec.stars)
            if spec.gamma.kind == "image_is_narrows":
                if spec.gamma.y is None:
                    raise PropertyFileError("image_is_narrows needs an element y")
                K.check_index(spec.gamma.y)
        except IndexOutOfRange as e:
            raise PropertyFileError(f"Property {name!r}: {e}") from e
        narrows = spec.gamma.y if spec.gamma.kind == "image_is_narrows" else None
        return cls(
            K=K,
            bullets=mask_of(spec.bullets),
            stars=mask_of(spec.stars),
            narrows=narrows,
            name=name,
            description=spec.description,
        )

    def to_spec(self) -> AbsorptionPropertySpec:
        gamma = (
            GammaSpec(kind="image_is_narrows", y=self.narrows)
            if self.narrows is not None
            else GammaSpec()
        )
        return AbsorptionPropertySpec(
            K=self.K.to_spec(),
            bullets=elements_of(self.bullets),
            stars=elements_of(self.stars),
            gamma=gamma,
            description=self.description,
        )


@dataclass(frozen=True)
class Counterexample:
    retract: SubsetMask
    embedding: Embedding
    star: int


@dataclass(frozen=True)
class AbsorptionVerdict:
    holds: bool
    retracts_checked: int
    embeddings_checked: int
    counterexample: Counterexample | None = None


def embeddings(
    K: Lattice, L: Lattice, narrows: int | None = None, cap: int = DEFAULT_RETRACTION_CAP
) -> Iterator[Embedding]:
    """
    Injective meet- and join-preserving maps ``K -> L``.

    With ``narrows`` set, only maps sending that element of ``K`` to a
    narrows of ``L`` are produced. Maps are yielded as image tuples indexed
    by the elements of ``K``.

    Raises:
        SizeLimit: if ``L`` has more than ``cap`` elements.
    """
    if L.n > cap:
        raise SizeLimit("embedding search", L.n, cap)
    if K.n > L.n:
        return
    order = K.linear_extension
    pos = [0] * K.n
    for k, x in enumerate(order):
        pos[x] = k

    checks: list[list[tuple[int, int, int, bool]]] = [[] for _ in range(K.n)]
    for a in range(K.n):
        for b in range(a + 1, K.n):
            for c, is_meet in ((K.meet(a, b), True), (K.join(a, b), False)):
                if c in (a, b):
                    continue
                checks[max(pos[a], pos[b], pos[c])].append((a, b, c, is_meet))

    narrows_mask = mask_of(v for v in range(L.n) if is_narrows(L, v))
    img = [-1] * K.n

    def search(k: int, used: int) -> Iterator[Embedding]:
        if k == K.n:
            yield tuple(img)
            return
        x = order[k]
        candidates = L.full & ~used
        for y in K.lower_covers[x]:
            candidates &= L.up[img[y]]
        if x == narrows:
            candidates &= narrows_mask
        for v in iter_bits(candidates):
            img[x] = v
            if all(
                img[c] == (L._meet if is_meet else L._join)[img[a]][img[b]]
                for a, b, c, is_meet in checks[k]
            ):
                yield from search(k + 1, used | (1 << v))
        img[x] = -1

    yield from search(0, 0)


def _image(g: Embedding, mask: SubsetMask) -> SubsetMask:
    return mask_of(g[x] for x in iter_bits(mask))


def check_absorption(
    L: Lattice,
    prop: AbsorptionProperty,
    S: SubsetMask | None = None,
    cap: int = DEFAULT_RETRACTION_CAP,
) -> AbsorptionVerdict:
    """
    Check the property on every retract of ``L``, or on ``S`` alone.

    The counterexample reported is the least one: retracts in canonical
    order, then embeddings in search order, then the smallest violated star.

    Raises:
        NotARetract: if ``S`` is given and is not a retract of ``L``.
    """
    all_retracts = retracts(L, "bruteforce", cap)
    if S is not None:
        if S not in set(all_retracts):
            raise NotARetract(f"{L.format_mask(S)} is not a retract")
        scope = [S]
    else:
        scope = all_retracts
    maps = list(embeddings(prop.K, L, prop.narrows, cap))
    logger.debug(f"{prop.name}: {len(maps)} embeddings into {L.n} elements")
    images = [(g, _image(g, prop.bullets)) for g in maps]
    for retract in scope:
        for g, bullet_image in images:
            if not is_subset(bullet_image, retract):
                continue
            for star in iter_bits(prop.stars):
                if not retract >> g[star] & 1:
                    return AbsorptionVerdict(
                        holds=False,
                        retracts_checked=len(scope),
                        embeddings_checked=len(maps),
                        counterexample=Counterexample(retract, g, star),
                    )
    return AbsorptionVerdict(
        holds=True, retracts_checked=len(scope), embeddings_checked=len(maps)
    )


def glued_squares() -> Lattice:
    """Two four-element boolean lattices glued top-to-bottom at ``y``."""
    return lattice_from_covers(7, GLUED_SQUARES_COVERS, GLUED_SQUARES_LABELS)


def builtin_property(name: str) -> AbsorptionProperty:
    """
    ``rc``, ``glusqap`` or ``glusqap-outer``.

    ``rc`` is relative complementation in a four-element boolean sublattice:
    bottom, top and one atom in ``S`` force the other atom. ``glusqap`` marks
    the four neighbours of the middle element of the glued squares and stars
    the middle; ``glusqap-outer`` marks the bottom, one lower atom, one upper
    atom and the top instead. Both glued-squares variants require the middle
    to land on a narrows.

    Raises:
        UnknownName: for any other name.
    """
    if name == "rc":
        K = lattice_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)], ["a", "c", "d", "b"])
        return AbsorptionProperty(
            K=K,
            bullets=mask_of([0, 1, 3]),
            stars=mask_of([2]),
            name=name,
            description="Retracts are closed under relative complements",
        )
    if name == "glusqap":
        return AbsorptionProperty(
            K=glued_squares(),
            bullets=mask_of([1, 2, 4, 5]),
            stars=mask_of([GLUED_SQUARES_MIDDLE]),
            narrows=GLUED_SQUARES_MIDDLE,
            name=name,
            description="Glued squares: the neighbours of a narrows force the narrows",
        )
    if name == "glusqap-outer":
        return AbsorptionProperty(
            K=glued_squares(),
            bullets=mask_of([0, 1, 4, 6]),
            stars=mask_of([GLUED_SQUARES_MIDDLE]),
            narrows=GLUED_SQUARES_MIDDLE,
            name=name,
            description="Glued squares: bottom, two atoms and top force the narrows",
        )
    raise UnknownName(f"Unknown built-in property {name!r}; use rc, glusqap or glusqap-outer")


BUILTIN_PROPERTIES = ("rc", "glusqap", "glusqap-outer")

"""CF-approximation spaces and their CF-closed sets.

A CF-approximation space is a GA-space ``(U, R)`` with ``R`` transitive plus a
nonempty family ``F`` of finite subsets such that for every member ``F`` and
every ``K`` inside the upper approximation of ``F`` some member ``G`` has
``K`` inside its upper approximation and sits inside that of ``F``.

Throughout, ``img(F)`` abbreviates the upper approximation of ``F``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import (
    CFAxiomError,
    DensityError,
    EmptyFamilyError,
    EnumerationLimitError,
    NotClosedError,
    NotTransitiveError,
    PreconditionError,
    SubfamilyError,
    UniverseMismatchError,
)
from .ga import GASpace
from .poset import FinitePoset
from .sets import ElemSet, Universe, bits, set_key, submasks, transfer

# bound on |U| for sweeps over every subset of the universe
SWEEP_LIMIT = 16


class FiniteFamily:
    """A deduplicated, ordered, nonempty family of subsets of one universe."""

    __slots__ = ("universe", "sets", "masks", "_pos")

    def __init__(self, universe: Universe, sets: Iterable[ElemSet]):
        masks: list[int] = []
        pos: dict[int, int] = {}
        for s in sets:
            if not isinstance(s, ElemSet):
                raise TypeError(f"family members must be ElemSet, got {type(s).__name__}")
            if s.universe != universe:
                raise UniverseMismatchError("family member over a different universe")
            if s.mask not in pos:
                pos[s.mask] = len(masks)
                masks.append(s.mask)
        if not masks:
            raise EmptyFamilyError()
        self.universe = universe
        self.masks = tuple(masks)
        self.sets = tuple(universe.from_mask(m) for m in masks)
        self._pos = pos

    @classmethod
    def of(cls, universe: Universe, *members: Iterable[str]) -> "FiniteFamily":
        return cls(universe, [universe.set(m) for m in members])

    def index(self, s: ElemSet) -> int:
        if s.universe != self.universe or s.mask not in self._pos:
            raise SubfamilyError(f"{s} is not a family member")
        return self._pos[s.mask]

    def __contains__(self, s) -> bool:
        return isinstance(s, ElemSet) and s.universe == self.universe and s.mask in self._pos

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteFamily) and self.universe == other.universe and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.universe, self.masks))

    def __repr__(self) -> str:
        return "FiniteFamily(" + ", ".join(str(s) for s in self.sets) + ")"


class CFSpace:
    """A validated CF-approximation space.  Build one with :func:`validate_cf_space`."""

    def __init__(self, ga: GASpace, family: FiniteFamily, _token=None):
        if _token is not _TRUSTED:
            raise TypeError("use validate_cf_space() to build a CFSpace")
        self.ga = ga
        self.family = family
        self.images = tuple(ga.upper_mask(m) for m in family.masks)
        self._memo: dict = {}

    @classmethod
    def unchecked(cls, ga: GASpace, family: FiniteFamily) -> "CFSpace":
        """Skip validation.  Only for test harnesses that need broken spaces."""
        return cls(ga, family, _TRUSTED)

    @property
    def universe(self) -> Universe:
        return self.ga.universe

    @property
    def masks(self) -> tuple[int, ...]:
        return self.family.masks

    def upper(self, mask: int) -> int:
        return self.ga.upper_mask(mask)

    def upper_approx(self, A: ElemSet) -> ElemSet:
        return self.ga.upper_approx(A)

    def image(self, F: ElemSet) -> ElemSet:
        return self.universe.from_mask(self.images[self.family.index(F)])

    def elemset(self, mask: int) -> ElemSet:
        return self.universe.from_mask(mask)

    def check_set(self, E: ElemSet) -> int:
        if not isinstance(E, ElemSet):
            raise TypeError(f"expected ElemSet, got {type(E).__name__}")
        if E.universe != self.universe:
            raise UniverseMismatchError("set is over a different universe")
        return E.mask

    def __eq__(self, other) -> bool:
        return isinstance(other, CFSpace) and self.ga == other.ga and self.family == other.family

    def __hash__(self) -> int:
        return hash((self.ga, self.family))

    def __repr__(self) -> str:
        return f"CFSpace(U={' '.join(self.universe.names)}, |R|={len(self.ga.relation)}, |F|={len(self.family)})"


_TRUSTED = object()


# -- validation ----------------------------------------------------------------


def cf_axiom_violation(ga: GASpace, family: FiniteFamily) -> tuple[int, int] | None:
    """First violating ``(F, K)`` as masks, or None.

    If some ``K`` fails for ``F`` then ``K = img(F)`` fails as well (the axiom is
    downward closed in ``K``), so only that maximal ``K`` is tested and it is the
    one reported.
    """
    checked: dict[int, bool] = {}
    for F in family.masks:
        img = ga.upper_mask(F)
        ok = checked.get(img)
        if ok is None:
            ok = any(G & ~img == 0 and img & ~ga.upper_mask(G) == 0 for G in family.masks)
            checked[img] = ok
        if not ok:
            return F, img
    return None


def cf_axiom_violation_exhaustive(ga: GASpace, family: FiniteFamily) -> tuple[int, int] | None:
    """Literal check over every ``K`` inside every ``img(F)``; returns the first failure."""
    images = [ga.upper_mask(G) for G in family.masks]
    for F in family.masks:
        img = ga.upper_mask(F)
        if img.bit_count() > SWEEP_LIMIT:
            raise EnumerationLimitError(f"|img(F)| = {img.bit_count()} > {SWEEP_LIMIT}")
        for K in submasks(img):
            if not any(K & ~gi == 0 and G & ~img == 0 for G, gi in zip(family.masks, images)):
                return F, K
    return None


def validate_cf_space(ga: GASpace, family: FiniteFamily) -> CFSpace:
    """Check transitivity and the consistency axiom; return the space or raise."""
    if family.universe != ga.universe:
        raise UniverseMismatchError("family and relation live in different universes")
    bad = ga.transitivity_violation()
    if bad is not None:
        raise NotTransitiveError(*bad)
    hit = cf_axiom_violation(ga, family)
    if hit is not None:
        F, K = hit
        raise CFAxiomError(ga.universe.from_mask(F), ga.universe.from_mask(K))
    return CFSpace(ga, family, _TRUSTED)


def build_space(names, pairs, members) -> CFSpace:
    """Convenience constructor from plain element names."""
    ga = GASpace.build(names, pairs)
    return validate_cf_space(ga, FiniteFamily.of(ga.universe, *members))


# -- closed sets ------------------------------------------------------------------


def _closed_mask(space: CFSpace, E: int) -> bool:
    candidates = [
        img for F, img in zip(space.masks, space.images) if F & ~E == 0 and img & ~E == 0
    ]
    for K in submasks(E):
        if not any(K & ~img == 0 for img in candidates):
            return False
    return True


def is_cf_closed(space: CFSpace, E: ElemSet) -> bool:
    """Every finite ``K`` inside ``E`` is captured: ``K <= img(F) <= E`` with ``F <= E``."""
    return _closed_mask(space, space.check_set(E))


def closed_by_directed_images(space: CFSpace, E: ElemSet) -> bool:
    """``{img(F) : F <= E}`` is directed and its union is ``E``."""
    E = space.check_set(E)
    family = {img for F, img in zip(space.masks, space.images) if F & ~E == 0}
    if not family:
        return False
    for a in family:
        for b in family:
            if not any((a | b) & ~c == 0 for c in family):
                return False
    union = 0
    for a in family:
        union |= a
    return union == E


def closed_by_directed_subfamily(space: CFSpace, E: ElemSet, limit: int = 16) -> bool:
    """Some subfamily has directed images whose union is ``E``."""
    E = space.check_set(E)
    # a member whose image leaves E can never be part of such a subfamily
    images = sorted({img for img in space.images if img & ~E == 0})
    if len(images) > limit:
        raise EnumerationLimitError(f"{len(images)} candidate images > {limit}")
    for r in range(1, len(images) + 1):
        for chosen in combinations(images, r):
            union = 0
            for a in chosen:
                union |= a
            if union != E:
                continue
            if all(any((a | b) & ~c == 0 for c in chosen) for a in chosen for b in chosen):
                return True
    return False


def closed_by_capture(space: CFSpace, E: ElemSet) -> bool:
    """Every ``K <= E`` satisfies ``K <= img(F) <= E`` for some member ``F``."""
    E = space.check_set(E)
    inside = [img for img in space.images if img & ~E == 0]
    return all(any(K & ~img == 0 for img in inside) for K in submasks(E))


class ClosedFamily:
    """All CF-closed sets of a space, in canonical order, with their inclusion poset."""

    def __init__(self, space: CFSpace, masks: Iterable[int]):
        self.space = space
        self.masks = tuple(sorted(set(masks), key=set_key))
        self.sets = tuple(space.elemset(m) for m in self.masks)
        self._set = frozenset(self.masks)

    def __contains__(self, E) -> bool:
        if isinstance(E, ElemSet):
            return E.universe == self.space.universe and E.mask in self._set
        return E in self._set

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.masks)

    @cached_property
    def poset(self) -> FinitePoset:
        rows = []
        for a in self.masks:
            rows.append(sum(1 << j for j, b in enumerate(self.masks) if a & ~b == 0))
        return FinitePoset(self.sets, rows)


def enumerate_closed_sets(space: CFSpace, oracle: bool = False) -> ClosedFamily:
    """Closed sets via the images of family members, or (``oracle``) a full sweep."""
    if oracle:
        n = space.universe.size
        if n > SWEEP_LIMIT:
            raise EnumerationLimitError(f"|U| = {n} > {SWEEP_LIMIT}")
        return ClosedFamily(space, [E for E in range(1 << n) if _closed_mask(space, E)])
    memo = space._memo
    if "closed" not in memo:
        masks = set(space.images)
        if 0 in space.masks:
            masks.add(0)
        memo["closed"] = ClosedFamily(space, masks)
    return memo["closed"]


def closed_set_poset(space: CFSpace) -> FinitePoset:
    return enumerate_closed_sets(space).poset


def _require_closed(space: CFSpace, E: ElemSet) -> int:
    m = space.check_set(E)
    if m not in enumerate_closed_sets(space):
        raise NotClosedError(E)
    return m


def way_below_closed(space: CFSpace, E1: ElemSet, E2: ElemSet) -> bool:
    """``E1 << E2`` iff some member ``F`` has ``E1 <= img(F)`` and ``F <= E2``."""
    a = _require_closed(space, E1)
    b = _require_closed(space, E2)
    return any(a & ~img == 0 and F & ~b == 0 for F, img in zip(space.masks, space.images))


def is_topological(space: CFSpace) -> bool:
    return space.ga.is_preorder()


def compacts_match_basis(space: CFSpace, definitional: bool = False) -> bool:
    """For topological spaces the member images are exactly the compact closed sets."""
    if not is_topological(space):
        raise PreconditionError("space is not topological")
    poset = closed_set_poset(space)
    compact = {E.mask for E in poset.compacts(definitional)}
    return compact == set(space.images)


# -- subspaces ----------------------------------------------------------------------


def _subuniverse(universe: Universe, V: int) -> Universe:
    return Universe(universe.names[i] for i in bits(V))


def principal_subspace(space: CFSpace, E: ElemSet) -> CFSpace:
    """``(E, R restricted to E, members inside E)``; its closed sets are those below ``E``."""
    m = _require_closed(space, E)
    sub = _subuniverse(space.universe, m)
    members = [transfer(s, sub) for s in space.family.sets if s.mask & ~m == 0]
    if not members:
        raise AssertionError(f"no family member inside closed set {E}")
    return validate_cf_space(space.ga.restrict(sub), FiniteFamily(sub, members))


def _subfamily_masks(space: CFSpace, V: int, G: Iterable[ElemSet]) -> list[int]:
    out = []
    for g in G:
        m = space.check_set(g)
        if g not in space.family:
            raise SubfamilyError(f"{g} is not a member of the family")
        if m & ~V:
            raise SubfamilyError(f"{g} is not inside {space.elemset(V)}")
        out.append(m)
    return out


def restrict_subspace(space: CFSpace, V: ElemSet, G: Iterable[ElemSet]) -> CFSpace:
    """Build ``(V, R|V, G)`` and validate it as a CF-approximation space."""
    v = space.check_set(V)
    G = list(G)
    _subfamily_masks(space, v, G)
    sub = _subuniverse(space.universe, v)
    return validate_cf_space(space.ga.restrict(sub), FiniteFamily(sub, [transfer(g, sub) for g in G]))


def density_violation(space: CFSpace, V: ElemSet, G: Iterable[ElemSet]) -> tuple[ElemSet, ElemSet] | None:
    """First ``(K, F)`` with ``K <= img(F)`` that no member of ``G`` interpolates.

    As with the consistency axiom, ``K = img(F)`` is the maximal candidate and is
    the one reported.
    """
    v = space.check_set(V)
    gs = [(g, space.upper(g)) for g in _subfamily_masks(space, v, G)]
    for F, img in zip(space.masks, space.images):
        if not any(img & ~gi == 0 and g & ~img == 0 for g, gi in gs):
            return space.elemset(img), space.elemset(F)
    return None


def is_dense_subspace(space: CFSpace, V: ElemSet, G: Iterable[ElemSet]) -> bool:
    G = list(G)
    restrict_subspace(space, V, G)
    return density_violation(space, V, G) is None


def dense_iso(space: CFSpace, V: ElemSet, G: Iterable[ElemSet]) -> dict[ElemSet, ElemSet]:
    """The map ``E -> E & V`` from closed sets of ``space`` to those of the subspace.

    Bijectivity is verified by building the inverse explicitly; raises
    :class:`DensityError` naming an offending closed set when it fails.
    """
    G = list(G)
    sub = restrict_subspace(space, V, G)
    violation = density_violation(space, V, G)
    v = space.check_set(V)
    big = enumerate_closed_sets(space)
    small = enumerate_closed_sets(sub)
    forward: dict[ElemSet, ElemSet] = {}
    inverse: dict[ElemSet, ElemSet] = {}
    for E in big.sets:
        image = transfer(space.elemset(E.mask & v), sub.universe)
        if image not in small:
            raise DensityError(E, "image is not closed in the subspace")
        if image in inverse:
            raise DensityError(E, f"collides with {inverse[image]} under intersection")
        forward[E] = image
        inverse[image] = E
    for S in small.sets:
        if S not in inverse:
            raise DensityError(S, "subspace closed set is not hit")
    for E1 in big.sets:
        for E2 in big.sets:
            if (E1.mask & ~E2.mask == 0) != (forward[E1].mask & ~forward[E2].mask == 0):
                raise DensityError(E1, f"order is not reflected against {E2}")
    if violation is not None:
        K, F = violation
        raise DensityError(space.upper_approx(F), f"no member of G interpolates K={K} F={F}")
    return forward


__all__ = [
    "FiniteFamily",
    "CFSpace",
    "ClosedFamily",
    "validate_cf_space",
    "build_space",
    "cf_axiom_violation",
    "cf_axiom_violation_exhaustive",
    "is_cf_closed",
    "closed_by_directed_images",
    "closed_by_directed_subfamily",
    "closed_by_capture",
    "enumerate_closed_sets",
    "closed_set_poset",
    "way_below_closed",
    "is_topological",
    "compacts_match_basis",
    "principal_subspace",
    "restrict_subspace",
    "density_violation",
    "is_dense_subspace",
    "dense_iso",
]

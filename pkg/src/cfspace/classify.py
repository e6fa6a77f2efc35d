"""Join saturation, witness families, and sL / L / bc classification of CF-spaces.

For a query ``(M, F)`` the witness families are

* ``S(M, F)``: members ``G`` with ``img(M) <= img(G) <= img(F)`` whose image is
  contained in the image of every other member satisfying the same bounds;
* ``S*(M, F)``: those ``G`` in ``S(M, F)`` that also lie inside ``img(F)``;
* ``Sigma(M, F)``: members satisfying the same bounds whose image is contained
  in the image of *every* member whose image contains ``img(M)``.

Every member of one family shares a single image, so all three are computed
from "the" minimal image and then expanded back to members.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cf import CFSpace, FiniteFamily, enumerate_closed_sets, is_topological
from .errors import NotClosedError, PreconditionError, SubfamilyError
from .poset import FinitePoset, classify_poset
from .sets import ElemSet, set_key


@dataclass(frozen=True)
class JoinSaturation:
    """All unions of nonempty finite subfamilies of ``base``."""

    base: FiniteFamily
    masks: tuple[int, ...]

    @property
    def sets(self) -> tuple[ElemSet, ...]:
        u = self.base.universe
        return tuple(u.from_mask(m) for m in self.masks)

    def __contains__(self, s) -> bool:
        if isinstance(s, ElemSet):
            return s.universe == self.base.universe and s.mask in self.masks
        return s in self.masks

    def __len__(self) -> int:
        return len(self.masks)


def join_saturation(family: FiniteFamily) -> JoinSaturation:
    base = family.masks
    seen = set(base)
    frontier = list(base)
    while frontier:
        fresh = []
        for a in frontier:
            for b in base:
                u = a | b
                if u not in seen:
                    seen.add(u)
                    fresh.append(u)
        frontier = fresh
    return JoinSaturation(family, tuple(sorted(seen, key=set_key)))


@dataclass(frozen=True)
class WitnessFamilies:
    M: ElemSet
    F: ElemSet
    s: tuple[ElemSet, ...]
    s_star: tuple[ElemSet, ...]
    sigma: tuple[ElemSet, ...]


class _Analysis:
    """Per-space caches shared by every query."""

    def __init__(self, space: CFSpace):
        self.space = space
        self.by_image: dict[int, list[int]] = {}
        for m, img in zip(space.masks, space.images):
            self.by_image.setdefault(img, []).append(m)
        self.distinct = tuple(sorted(self.by_image, key=set_key))
        self.saturation = join_saturation(space.family)
        self._s: dict = {}
        self._sigma: dict = {}

    def s_image(self, m_img: int, f_img: int) -> int | None:
        """The common image of ``S(M, F)``, or None when the family is empty."""
        key = (m_img, f_img)
        if key not in self._s:
            between = [g for g in self.distinct if m_img & ~g == 0 and g & ~f_img == 0]
            result = None
            if between:
                meet = f_img
                for g in between:
                    meet &= g
                if meet in self.by_image and m_img & ~meet == 0 and meet & ~f_img == 0:
                    result = meet
            self._s[key] = result
        return self._s[key]

    def sigma_image(self, m_img: int, f_img: int) -> int | None:
        key = (m_img, f_img)
        if key not in self._sigma:
            above = [g for g in self.distinct if m_img & ~g == 0]
            result = None
            if above:
                meet = above[0]
                for g in above:
                    meet &= g
                if meet in self.by_image and m_img & ~meet == 0 and meet & ~f_img == 0:
                    result = meet
            self._sigma[key] = result
        return self._sigma[key]

    def s_star_nonempty(self, m_img: int, f_img: int) -> bool:
        img = self.s_image(m_img, f_img)
        return img is not None and any(G & ~f_img == 0 for G in self.by_image[img])


def analysis(space: CFSpace) -> _Analysis:
    memo = space._memo
    if "analysis" not in memo:
        memo["analysis"] = _Analysis(space)
    return memo["analysis"]


def witness_families(space: CFSpace, M: ElemSet, F: ElemSet) -> WitnessFamilies:
    """``S``, ``S*`` and ``Sigma`` for ``M`` in the saturation (or empty) and member ``F``."""
    a = analysis(space)
    m = space.check_set(M)
    if m != 0 and m not in a.saturation:
        raise SubfamilyError(f"{M} is not in the join saturation")
    if F not in space.family:
        raise SubfamilyError(f"{F} is not a family member")
    m_img = space.upper(m)
    f_img = space.images[space.family.index(F)]
    el = space.elemset

    img = a.s_image(m_img, f_img)
    s = () if img is None else tuple(el(G) for G in a.by_image[img])
    s_star = tuple(G for G in s if G.mask & ~f_img == 0)
    img = a.sigma_image(m_img, f_img)
    sigma = () if img is None else tuple(el(G) for G in a.by_image[img])
    return WitnessFamilies(M, F, s, s_star, sigma)


SPACE_FLAGS = ("topological", "ultra_sl", "sl", "l", "bc")


@dataclass
class SpaceClassReport:
    flags: dict[str, bool]
    witnesses: dict[str, tuple[ElemSet, ElemSet]] = field(default_factory=dict)

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def implications_hold(self) -> bool:
        f = self.flags
        return (
            (not f["ultra_sl"] or f["sl"])
            and (not f["l"] or f["sl"])
            and (not f["bc"] or f["l"])
            and (not f["topological"] or f["ultra_sl"] == f["sl"])
        )


def classify_space(space: CFSpace) -> SpaceClassReport:
    """Decide ultra-sL, sL, L and bc membership; failing flags carry an ``(M, F)`` query."""
    memo = space._memo
    if "class" in memo:
        return memo["class"]
    a = analysis(space)
    sat = a.saturation.masks
    with_empty = sat if 0 in sat else (0,) + sat
    members = list(zip(space.masks, space.images))
    el = space.elemset

    def first_failure(Ms, admissible, ok):
        for m in Ms:
            m_img = space.upper(m)
            for F, f_img in members:
                if admissible(m, m_img, f_img) and not ok(m_img, f_img):
                    return el(m), el(F)
        return None

    inside = lambda m, m_img, f_img: m & ~f_img == 0
    results = {
        "ultra_sl": first_failure(sat, lambda m, m_img, f_img: m_img & ~f_img == 0, a.s_star_nonempty),
        "sl": first_failure(sat, inside, lambda mi, fi: a.s_image(mi, fi) is not None),
        "l": first_failure(with_empty, inside, lambda mi, fi: a.s_image(mi, fi) is not None),
        "bc": first_failure(with_empty, inside, lambda mi, fi: a.sigma_image(mi, fi) is not None),
    }
    flags = {"topological": is_topological(space)}
    witnesses = {}
    for name, hit in results.items():
        flags[name] = hit is None
        if hit is not None:
            witnesses[name] = hit
    report = SpaceClassReport(flags, witnesses)
    memo["class"] = report
    return report


def _closed(space: CFSpace, E: ElemSet) -> int:
    m = space.check_set(E)
    if m not in enumerate_closed_sets(space):
        raise NotClosedError(E)
    return m


def supremum_in_ideal(space: CFSpace, H1: ElemSet, H2: ElemSet, E: ElemSet, check: bool = True) -> ElemSet:
    """Least closed upper bound of ``H1`` and ``H2`` among closed subsets of ``E``.

    Collects ``S(F1 | F2, F3)`` over all members ``F1 <= H1``, ``F2 <= H2`` and
    ``F3 <= E`` with ``F1 | F2 <= img(F3)``, and returns the union of their images.
    """
    h1, h2, e = _closed(space, H1), _closed(space, H2), _closed(space, E)
    if (h1 | h2) & ~e:
        raise PreconditionError("H1 and H2 must lie inside E")
    if check and not classify_space(space).sl:
        raise PreconditionError("space is not an sL-approximation space")
    if not h1 and not h2:
        return space.elemset(0)
    a = analysis(space)
    inside = lambda bound: [F for F in space.masks if F & ~bound == 0]
    unions = {f1 | f2 for f1 in inside(h1) for f2 in inside(h2)}
    bounds = {img for F, img in zip(space.masks, space.images) if F & ~e == 0}
    H = 0
    for m in unions:
        m_img = space.upper(m)
        for f_img in bounds:
            if m & ~f_img:
                continue
            img = a.s_image(m_img, f_img)
            if img is not None:
                H |= img
    return space.elemset(H)


def least_in_ideal(space: CFSpace, E: ElemSet, check: bool = True) -> ElemSet:
    """Least closed subset of ``E``: the image of ``S(empty, F)`` for some member ``F <= E``."""
    e = _closed(space, E)
    if check and not classify_space(space).l:
        raise PreconditionError("space is not an L-approximation space")
    if not e:
        return space.elemset(0)
    inside = [F for F in space.masks if F & ~e == 0]
    if not inside:
        raise PreconditionError(f"no family member inside {E}")
    F = min(inside, key=set_key)
    img = analysis(space).s_image(0, space.upper(F))
    if img is None:
        raise PreconditionError(f"S(empty, {space.elemset(F)}) is empty")
    return space.elemset(img)


def image_poset(space: CFSpace) -> FinitePoset:
    """Distinct member images ordered by inclusion."""
    images = analysis(space).distinct
    rows = [sum(1 << j for j, b in enumerate(images) if a & ~b == 0) for a in images]
    return FinitePoset([space.elemset(m) for m in images], rows)


def sl_cusl_criterion(space: CFSpace) -> bool:
    """For topological spaces: the member images form an sL-cusl."""
    if not is_topological(space):
        raise PreconditionError("space is not topological")
    return classify_poset(image_poset(space)).sl_cusl


def literal_witness_families(space: CFSpace, M: ElemSet, F: ElemSet) -> WitnessFamilies:
    """Oracle for :func:`witness_families` that follows the definitions member by member."""
    m_img = space.upper(space.check_set(M))
    f_img = space.images[space.family.index(F)]
    members = list(zip(space.masks, space.images))
    qualifying = [(G, g) for G, g in members if m_img & ~g == 0 and g & ~f_img == 0]
    s = [G for G, g in qualifying if all(g & ~h == 0 for _, h in qualifying)]
    s_star = [G for G in s if G & ~f_img == 0]
    above = [h for _, h in members if m_img & ~h == 0]
    sigma = [G for G, g in qualifying if all(g & ~h == 0 for h in above)]
    el = space.elemset
    return WitnessFamilies(
        M, F, tuple(map(el, s)), tuple(map(el, s_star)), tuple(map(el, sigma))
    )

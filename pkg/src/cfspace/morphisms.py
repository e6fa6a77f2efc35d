"""CF-approximable relations between CF-spaces and the maps they induce on closed sets.

A relation ``theta`` from ``src`` to ``dst`` pairs family members and must satisfy

1. every source member is related to something;
2. ``F <= img(F')`` and ``F theta G`` give ``F' theta G``;
3. ``F theta G`` and ``G' <= img(G)`` give ``F theta G'``;
4. ``F theta G`` has an interpolant ``F' <= img(F)``, ``G <= img(G')``, ``F' theta G'``;
5. ``F theta G1`` and ``F theta G2`` give some ``F theta G3`` with ``G1 | G2 <= img(G3)``.

Arrows are stored as pairs of family-member indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .cf import CFSpace, enumerate_closed_sets
from .errors import ApproximableError, NotClosedError, PreconditionError, SubfamilyError
from .sets import ElemSet, set_key


@dataclass(frozen=True)
class Violation:
    axiom: int
    witness: tuple[ElemSet, ...]

    def __str__(self) -> str:
        names = {
            1: ("F",),
            2: ("F", "F'", "G"),
            3: ("F", "G", "G'"),
            4: ("F", "G"),
            5: ("F", "G1", "G2"),
        }[self.axiom]
        body = " ".join(f"{n}={s}" for n, s in zip(names, self.witness))
        return f"axiom ({self.axiom}): {body}"


class ApproximableRelation:
    """A validated CF-approximable relation.  Build with :func:`validate_approximable`."""

    def __init__(self, src: CFSpace, dst: CFSpace, arrows: frozenset, _token=None):
        if _token is not _TRUSTED:
            raise TypeError("use validate_approximable() to build an ApproximableRelation")
        self.src = src
        self.dst = dst
        self.arrows = arrows

    def pairs(self) -> list[tuple[ElemSet, ElemSet]]:
        fs, gs = self.src.family.sets, self.dst.family.sets
        return [(fs[i], gs[j]) for i, j in sorted(self.arrows)]

    def __contains__(self, pair) -> bool:
        F, G = pair
        return (self.src.family.index(F), self.dst.family.index(G)) in self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ApproximableRelation)
            and self.src == other.src
            and self.dst == other.dst
            and self.arrows == other.arrows
        )

    def __hash__(self) -> int:
        return hash((self.src, self.dst, self.arrows))

    def __repr__(self) -> str:
        return f"ApproximableRelation({len(self.arrows)} arrows)"


_TRUSTED = object()


def _index_arrows(src: CFSpace, dst: CFSpace, arrows) -> frozenset:
    out = set()
    for F, G in arrows:
        if isinstance(F, int) and isinstance(G, int):
            if not (0 <= F < len(src.family) and 0 <= G < len(dst.family)):
                raise SubfamilyError(f"arrow index ({F}, {G}) out of range")
            out.add((F, G))
        else:
            out.add((src.family.index(F), dst.family.index(G)))
    return frozenset(out)


def _first_violations(src: CFSpace, dst: CFSpace, arrows: frozenset) -> list[tuple]:
    """One index-level witness per failing axiom, scanning in family order."""
    n1, n2 = len(src.family), len(dst.family)
    m1, i1 = src.masks, src.images
    m2, i2 = dst.masks, dst.images
    out_of = [sorted(j for (i, j) in arrows if i == a) for a in range(n1)]
    related = [set(row) for row in out_of]
    found = []

    for F in range(n1):
        if not out_of[F]:
            found.append((1, F))
            break

    def axiom2():
        for F in range(n1):
            for F2 in range(n1):
                if m1[F] & ~i1[F2] == 0:
                    for G in out_of[F]:
                        if G not in related[F2]:
                            return (2, F, F2, G)

    def axiom3():
        for F in range(n1):
            for G in out_of[F]:
                for G2 in range(n2):
                    if m2[G2] & ~i2[G] == 0 and G2 not in related[F]:
                        return (3, F, G, G2)

    def axiom4():
        for F in range(n1):
            for G in out_of[F]:
                if not any(
                    m1[F2] & ~i1[F] == 0 and m2[G] & ~i2[G2] == 0
                    for F2 in range(n1)
                    for G2 in out_of[F2]
                ):
                    return (4, F, G)

    def axiom5():
        for F in range(n1):
            targets = out_of[F]
            for a, G1 in enumerate(targets):
                for G2 in targets[a:]:
                    need = m2[G1] | m2[G2]
                    if not any(need & ~i2[G3] == 0 for G3 in targets):
                        return (5, F, G1, G2)

    for check in (axiom2, axiom3, axiom4, axiom5):
        hit = check()
        if hit is not None:
            found.append(hit)
    return found


def approximable_violations(src: CFSpace, dst: CFSpace, arrows) -> list[Violation]:
    idx = _index_arrows(src, dst, arrows)
    fs, gs = src.family.sets, dst.family.sets
    sides = {1: "f", 2: "ffg", 3: "fgg", 4: "fg", 5: "fgg"}
    out = []
    for hit in _first_violations(src, dst, idx):
        axiom, rest = hit[0], hit[1:]
        witness = tuple((fs if side == "f" else gs)[k] for side, k in zip(sides[axiom], rest))
        out.append(Violation(axiom, witness))
    return out


def validate_approximable(src: CFSpace, dst: CFSpace, arrows) -> ApproximableRelation:
    """Check axioms (1)-(5); raise :class:`ApproximableError` listing every failed axiom."""
    idx = _index_arrows(src, dst, arrows)
    violations = approximable_violations(src, dst, idx)
    if violations:
        raise ApproximableError(violations)
    return ApproximableRelation(src, dst, idx, _TRUSTED)


def identity_relation(space: CFSpace) -> ApproximableRelation:
    """``F theta G`` iff ``G <= img(F)``."""
    arrows = [
        (i, j)
        for i, img in enumerate(space.images)
        for j, G in enumerate(space.masks)
        if G & ~img == 0
    ]
    return validate_approximable(space, space, arrows)


def compose(theta1: ApproximableRelation, theta2: ApproximableRelation) -> ApproximableRelation:
    """Relational composition, ``theta1`` first."""
    if theta1.dst != theta2.src:
        raise PreconditionError("middle spaces differ")
    after: dict[int, set[int]] = {}
    for j, k in theta2.arrows:
        after.setdefault(j, set()).add(k)
    arrows = {(i, k) for i, j in theta1.arrows for k in after.get(j, ())}
    return validate_approximable(theta1.src, theta2.dst, arrows)


def induced_map(theta: ApproximableRelation) -> dict[ElemSet, ElemSet]:
    """``E -> union of img(G)`` over arrows ``F theta G`` with ``F <= E``."""
    src, dst = theta.src, theta.dst
    out = {}
    for E in enumerate_closed_sets(src).sets:
        h = 0
        for i, j in theta.arrows:
            if src.masks[i] & ~E.mask == 0:
                h |= dst.images[j]
        out[E] = dst.elemset(h)
    return out


def relation_from_map(src: CFSpace, dst: CFSpace, f: Mapping[ElemSet, ElemSet]) -> ApproximableRelation:
    """Arrows ``F theta G`` iff ``G <= f(img(F))`` for a map ``f`` on closed sets."""
    closed_dst = enumerate_closed_sets(dst)
    table = {}
    for E in enumerate_closed_sets(src).sets:
        if E not in f:
            raise PreconditionError(f"map undefined at closed set {E}")
        if f[E] not in closed_dst:
            raise NotClosedError(f[E])
        table[E.mask] = f[E].mask
    arrows = [
        (i, j)
        for i, img in enumerate(src.images)
        for j, G in enumerate(dst.masks)
        if G & ~table[img] == 0
    ]
    return validate_approximable(src, dst, arrows)


def map_is_monotone(h: Mapping[ElemSet, ElemSet]) -> bool:
    items = sorted(h.items(), key=lambda kv: set_key(kv[0].mask))
    return all(
        not (a <= b) or ha <= hb for a, ha in items for b, hb in items
    )


__all__ = [
    "Violation",
    "ApproximableRelation",
    "approximable_violations",
    "validate_approximable",
    "identity_relation",
    "compose",
    "induced_map",
    "relation_from_map",
    "map_is_monotone",
]

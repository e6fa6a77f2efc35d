"""Generalized approximation spaces and the rough-set approximation operators.

A relation is stored as a dense boolean matrix whose rows are bit masks:
``succ[x]`` holds every ``y`` with ``x R y``.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InputError, UniverseMismatchError
from .sets import ElemSet, Universe, bits


class Relation:
    __slots__ = ("universe", "succ", "pred")

    def __init__(self, universe: Universe, succ: Iterable[int]):
        succ = tuple(succ)
        if len(succ) != universe.size:
            raise InputError("relation matrix does not match universe size")
        full = universe.full
        pred = [0] * universe.size
        for x, row in enumerate(succ):
            if row & ~full:
                raise InputError("relation pair outside universe")
            for y in bits(row):
                pred[y] |= 1 << x
        self.universe = universe
        self.succ = succ
        self.pred = tuple(pred)

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[str, str]]) -> "Relation":
        rows = [0] * universe.size
        for x, y in pairs:
            rows[universe.index(x)] |= 1 << universe.index(y)
        return cls(universe, rows)

    def holds(self, x: int, y: int) -> bool:
        return bool(self.succ[x] >> y & 1)

    def pairs(self) -> list[tuple[str, str]]:
        names = self.universe.names
        return [(names[x], names[y]) for x, row in enumerate(self.succ) for y in bits(row)]

    def __len__(self) -> int:
        return sum(row.bit_count() for row in self.succ)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Relation)
            and self.universe == other.universe
            and self.succ == other.succ
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.succ))

    def __repr__(self) -> str:
        return "Relation(" + ", ".join(f"{x}R{y}" for x, y in self.pairs()) + ")"


class GASpace:
    """A finite carrier with one binary relation."""

    __slots__ = ("universe", "relation")

    def __init__(self, universe: Universe, relation: Relation):
        if relation.universe != universe:
            raise InputError("relation is over a different universe")
        self.universe = universe
        self.relation = relation

    @classmethod
    def build(cls, names: Iterable[str], pairs: Iterable[tuple[str, str]] = ()) -> "GASpace":
        universe = Universe(names)
        return cls(universe, Relation.from_pairs(universe, pairs))

    # -- operators on raw masks; the ElemSet versions below wrap these --

    def upper_mask(self, mask: int) -> int:
        out = 0
        for x, row in enumerate(self.relation.succ):
            if row & mask:
                out |= 1 << x
        return out

    def lower_mask(self, mask: int) -> int:
        out = 0
        for x, row in enumerate(self.relation.succ):
            if not row & ~mask:
                out |= 1 << x
        return out

    def successors(self, x: str) -> ElemSet:
        return self.universe.from_mask(self.relation.succ[self.universe.index(x)])

    def predecessors(self, x: str) -> ElemSet:
        return self.universe.from_mask(self.relation.pred[self.universe.index(x)])

    def upper_approx(self, A: ElemSet) -> ElemSet:
        """Elements whose successor set meets ``A``."""
        return self.universe.from_mask(self.upper_mask(_mask_in(A, self.universe)))

    def lower_approx(self, A: ElemSet) -> ElemSet:
        """Elements whose successor set lies inside ``A``."""
        return self.universe.from_mask(self.lower_mask(_mask_in(A, self.universe)))

    def is_reflexive(self) -> bool:
        return all(row >> x & 1 for x, row in enumerate(self.relation.succ))

    def is_transitive(self) -> bool:
        return self.transitivity_violation() is None

    def transitivity_violation(self) -> tuple[str, str, str] | None:
        """First ``(x, y, z)`` with ``x R y``, ``y R z`` and not ``x R z``."""
        succ = self.relation.succ
        names = self.universe.names
        for x, row in enumerate(succ):
            for y in bits(row):
                missing = succ[y] & ~row
                if missing:
                    z = next(bits(missing))
                    return names[x], names[y], names[z]
        return None

    def is_preorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def transitive_closure(self) -> "GASpace":
        rows = list(self.relation.succ)
        n = len(rows)
        # Warshall: after step k, paths through 0..k are accounted for
        for k in range(n):
            kbit = 1 << k
            krow = rows[k]
            for i in range(n):
                if rows[i] & kbit:
                    rows[i] |= krow
        return GASpace(self.universe, Relation(self.universe, rows))

    def restrict(self, universe: Universe) -> "GASpace":
        """``R`` intersected with ``V x V`` where ``V`` is the named sub-universe."""
        old = [self.universe.index(name) for name in universe.names]
        rows = []
        for i in old:
            row = 0
            for j_new, j_old in enumerate(old):
                if self.relation.succ[i] >> j_old & 1:
                    row |= 1 << j_new
            rows.append(row)
        return GASpace(universe, Relation(universe, rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, GASpace) and self.relation == other.relation

    def __hash__(self) -> int:
        return hash(self.relation)

    def __repr__(self) -> str:
        return f"GASpace({' '.join(self.universe.names)}; {len(self.relation)} pairs)"


def _mask_in(A: ElemSet, universe: Universe) -> int:
    if not isinstance(A, ElemSet):
        raise TypeError(f"expected ElemSet, got {type(A).__name__}")
    if A.universe != universe:
        raise UniverseMismatchError("set is over a different universe")
    return A.mask

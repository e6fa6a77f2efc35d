"""CF-approximation spaces induced by finite posets, and the round-trip back.

The induced space of a poset ``L`` has carrier ``L``, relation ``x R y`` iff
``x << y``, and as family every nonempty subset with a top element.  On a
finite poset ``<<`` is ``<=``, so the result is always topological and its
closed sets are the principal ideals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cf import CFSpace, FiniteFamily, enumerate_closed_sets, validate_cf_space
from .classify import classify_space
from .errors import EnumerationLimitError
from .ga import GASpace, Relation
from .poset import FinitePoset, are_isomorphic, classify_poset, is_order_isomorphism
from .sets import ElemSet, Universe, bits, set_key, submasks

# bound on the carrier size for the full family of topped subsets
INDUCE_LIMIT = 10

# poset flag -> space flag checked by the round-trip
TRANSFER = (("sl_domain", "sl"), ("l_domain", "l"), ("bc_domain", "bc"))


@dataclass(frozen=True)
class InducedSpace:
    source: FinitePoset
    space: CFSpace
    element_map: dict
    reduced: bool = False

    def tops(self) -> dict[ElemSet, object]:
        """The top element of every family member."""
        p = self.source
        label_of = {tok: label for label, tok in self.element_map.items()}
        out = {}
        for F in self.space.family.sets:
            idx = [p.index(label_of[name]) for name in F]
            top = next(i for i in idx if all(p.up[j] >> i & 1 for j in idx))
            out[F] = p.labels[top]
        return out


def _topped_subsets(p: FinitePoset, carrier: int, reduced: bool) -> list[int]:
    out = set()
    for t in bits(carrier):
        below = p.down[t] & carrier & ~(1 << t)
        if reduced:
            out.add(1 << t)
            out.update((1 << t) | (1 << x) for x in bits(below))
        else:
            out.update(sub | (1 << t) for sub in submasks(below))
    return sorted(out, key=set_key)


def _build(p: FinitePoset, carrier: int, rows_of, reduced: bool, limit: int) -> InducedSpace:
    idx = list(bits(carrier))
    if len(idx) > limit and not reduced:
        raise EnumerationLimitError(f"carrier of {len(idx)} elements > {limit}; use reduced mode")
    tokens = [p.labels[i] if isinstance(p.labels[i], str) else str(p.labels[i]) for i in idx]
    universe = Universe(tokens)
    pos = {old: new for new, old in enumerate(idx)}
    succ = []
    for i in idx:
        row = 0
        for j in bits(rows_of(i) & carrier):
            row |= 1 << pos[j]
        succ.append(row)
    ga = GASpace(universe, Relation(universe, succ))

    def relabel(mask: int) -> int:
        return sum(1 << pos[i] for i in bits(mask))

    family = FiniteFamily(universe, [universe.from_mask(relabel(m)) for m in _topped_subsets(p, carrier, reduced)])
    space = validate_cf_space(ga, family)
    element_map = {p.labels[i]: tok for i, tok in zip(idx, tokens)}
    return InducedSpace(p, space, element_map, reduced)


def induce_cf_space(p: FinitePoset, limit: int = INDUCE_LIMIT, reduced: bool = False) -> InducedSpace:
    """Relation ``<<``, family of all topped subsets.

    ``reduced`` keeps only singletons and two-element topped sets; it is a speed
    option and does not produce the normative family.
    """
    wb = p._way_below_rows(False)

    # x R y iff x << y, i.e. x is in the way-below row of y
    def rows_of(x: int) -> int:
        return sum(1 << y for y in range(p.n) if wb[y] >> x & 1)

    return _build(p, p.full, rows_of, reduced, limit)


def induce_topological_space(p: FinitePoset, limit: int = INDUCE_LIMIT) -> InducedSpace:
    """Carrier the compact elements, relation ``<=`` among them, topped subsets as family."""
    return _build(p, p.compacts_mask(), lambda x: p.up[x], False, limit)


def topological_in_induced(p: FinitePoset, limit: int = INDUCE_LIMIT):
    """The induced space together with ``(V, G)`` describing the topological subspace in it."""
    big = induce_cf_space(p, limit)
    small = induce_topological_space(p, limit)
    u = big.space.universe
    V = u.set(small.space.universe.names)
    G = [u.set(F) for F in small.space.family.sets]
    return big, V, G


@dataclass
class RoundTrip:
    induced: InducedSpace
    iso: dict
    transfer: dict[str, tuple[bool, bool]] = field(default_factory=dict)
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def representation_roundtrip(p: FinitePoset, limit: int = INDUCE_LIMIT) -> RoundTrip:
    """Rebuild ``p`` as the closed-set poset of its induced space and compare classes."""
    induced = induce_cf_space(p, limit)
    space = induced.space
    u = space.universe
    closed = enumerate_closed_sets(space)
    wb = p._way_below_rows(False)
    tok = induced.element_map
    iso = {}
    problems = []
    for i, label in enumerate(p.labels):
        E = u.set(tok[p.labels[j]] for j in bits(wb[i]))
        if E not in closed:
            problems.append(f"approximants of {label} are not closed: {E}")
        iso[label] = E
    q = closed.poset
    if not problems and not is_order_isomorphism(iso, p, q):
        problems.append("x -> approximants(x) is not an order isomorphism")
        if are_isomorphic(p, q) is None:
            problems.append("closed-set poset is not isomorphic to the source")

    pflags = classify_poset(p).flags
    sflags = classify_space(space).flags
    transfer = {}
    for pf, sf in TRANSFER:
        transfer[sf] = (pflags[pf], sflags[sf])
        if pflags[pf] != sflags[sf]:
            problems.append(f"{pf}={pflags[pf]} but space {sf}={sflags[sf]}")
    return RoundTrip(induced, iso, transfer, problems)

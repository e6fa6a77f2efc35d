"""Finite posets: order predicates, way-below, domain classes, isomorphism.

Elements are arbitrary hashable labels; internally every element is an index
and every subset is an ``int`` bit mask, with ``up[i]`` / ``down[i]`` holding
the principal filter / ideal of element ``i``.

``way_below`` has two routes.  The default uses the fact that directed subsets
of a finite poset have greatest elements, so ``x << y`` iff ``x <= y``.  The
definitional route enumerates every directed subset and is exponential; it is
guarded by ``DEFINITIONAL_LIMIT`` and exists so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .errors import (
    AntisymmetryError,
    EnumerationLimitError,
    InputError,
    PreconditionError,
    UnknownElementError,
)
from .sets import bits

DEFINITIONAL_LIMIT = 16

Label = Hashable


class FinitePoset:
    __slots__ = ("labels", "_index", "up", "down", "_memo")

    def __init__(self, labels: Sequence[Label], up: Sequence[int]):
        labels = tuple(labels)
        index = {}
        for i, label in enumerate(labels):
            if label in index:
                raise InputError(f"duplicate poset label {label!r}")
            index[label] = i
        n = len(labels)
        up = tuple(up)
        if len(up) != n:
            raise InputError("order matrix does not match carrier size")
        down = [0] * n
        for x in range(n):
            if not up[x] >> x & 1:
                raise InputError(f"order is not reflexive at {labels[x]!r}")
            for y in bits(up[x]):
                down[y] |= 1 << x
                if up[y] & ~up[x]:
                    raise InputError("order is not transitive")
                if y != x and up[y] >> x & 1:
                    raise AntisymmetryError(labels[x], labels[y])
        self.labels = labels
        self._index = index
        self.up = up
        self.down = tuple(down)
        self._memo: dict = {}

    # -- basic access ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownElementError(f"unknown poset element {label!r}") from None

    def mask(self, labels: Iterable[Label]) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def unmask(self, mask: int) -> tuple:
        return tuple(self.labels[i] for i in bits(mask))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        try:
            return label in self._index
        except TypeError:
            return False

    def leq(self, x: Label, y: Label) -> bool:
        return bool(self.up[self.index(x)] >> self.index(y) & 1)

    def down_set(self, x: Label) -> frozenset:
        return frozenset(self.unmask(self.down[self.index(x)]))

    def up_set(self, x: Label) -> frozenset:
        return frozenset(self.unmask(self.up[self.index(x)]))

    def is_upper_bound(self, z: Label, A: Iterable[Label]) -> bool:
        return self.mask(A) & ~self.down[self.index(z)] == 0

    def is_directed(self, D: Iterable[Label]) -> bool:
        return self.directed_mask(self.mask(D))

    def directed_mask(self, D: int) -> bool:
        """Nonempty, and every pair of members has an upper bound inside ``D``."""
        if not D:
            return False
        members = list(bits(D))
        up = self.up
        for k, a in enumerate(members):
            ua = up[a] & D
            for b in members[k + 1 :]:
                if not ua & up[b]:
                    return False
        return True

    def downclosure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    # -- suprema ----------------------------------------------------------

    def sup_mask(self, A: int, within: int | None = None) -> int | None:
        """Index of the least upper bound of ``A`` inside the subset ``within``."""
        ub = self.full if within is None else within
        for a in bits(A):
            ub &= self.up[a]
        for u in bits(ub):
            if ub & ~self.up[u] == 0:
                return u
        return None

    def sup(self, A: Iterable[Label]) -> Label | None:
        i = self.sup_mask(self.mask(A))
        return None if i is None else self.labels[i]

    def sup_within(self, A: Iterable[Label], bound: Label) -> Label | None:
        """Supremum of ``A`` in the subposet below ``bound``.

        For empty ``A`` this is the least element of that subposet, if any.
        """
        ideal = self.down[self.index(bound)]
        A = self.mask(A)
        if A & ~ideal:
            raise PreconditionError(f"subset is not below {bound!r}")
        i = self.sup_mask(A, ideal)
        return None if i is None else self.labels[i]

    def least(self) -> Label | None:
        i = self.sup_mask(0)
        return None if i is None else self.labels[i]

    def subposet(self, labels: Iterable[Label]) -> "FinitePoset":
        keep = [self.index(x) for x in labels]
        rows = []
        for i in keep:
            row = 0
            for k, j in enumerate(keep):
                if self.up[i] >> j & 1:
                    row |= 1 << k
            rows.append(row)
        return FinitePoset([self.labels[i] for i in keep], rows)

    # -- way-below --------------------------------------------------------

    def directed_subsets(self):
        """Yield every directed subset as a mask (exponential)."""
        if self.n > DEFINITIONAL_LIMIT:
            raise EnumerationLimitError(
                f"directed-subset enumeration over {self.n} > {DEFINITIONAL_LIMIT} elements"
            )
        for D in range(1, 1 << self.n):
            if self.directed_mask(D):
                yield D

    def _way_below_rows(self, definitional: bool) -> tuple[int, ...]:
        """``rows[y]`` is the mask of all ``x`` with ``x << y``."""
        key = ("wb", definitional)
        if key in self._memo:
            return self._memo[key]
        if not definitional:
            rows = self.down
        else:
            acc = [self.full] * self.n
            for D in self.directed_subsets():
                s = self.sup_mask(D)
                if s is None:
                    continue
                below_D = self.downclosure(D)
                for y in bits(self.down[s]):
                    acc[y] &= below_D
            rows = tuple(acc)
        self._memo[key] = rows
        return rows

    def way_below(self, x: Label, y: Label, definitional: bool = False) -> bool:
        return bool(self._way_below_rows(definitional)[self.index(y)] >> self.index(x) & 1)

    def way_below_set(self, y: Label, definitional: bool = False) -> frozenset:
        return frozenset(self.unmask(self._way_below_rows(definitional)[self.index(y)]))

    def compacts_mask(self, definitional: bool = False) -> int:
        rows = self._way_below_rows(definitional)
        return sum(1 << x for x in range(self.n) if rows[x] >> x & 1)

    def compacts(self, definitional: bool = False) -> frozenset:
        return frozenset(self.unmask(self.compacts_mask(definitional)))

    def is_dcpo(self, definitional: bool = False) -> bool:
        if not definitional:
            # a finite directed set contains its own maximum
            return True
        return all(self.sup_mask(D) is not None for D in self.directed_subsets())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset) or set(self.labels) != set(other.labels):
            return False
        return all(
            self.up_set(x) == other.up_set(x) for x in self.labels
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.labels))

    def __repr__(self) -> str:
        return f"FinitePoset({len(self.labels)} elements, {len(hasse_edges(self))} covers)"


def make_poset(labels: Iterable[Label], leq_pairs: Iterable[tuple[Label, Label]] = ()) -> FinitePoset:
    """Reflexive-transitive closure of ``leq_pairs``, then an antisymmetry check."""
    labels = tuple(labels)
    index = {}
    for i, label in enumerate(labels):
        if label in index:
            raise InputError(f"duplicate poset label {label!r}")
        index[label] = i
    rows = [1 << i for i in range(len(labels))]
    for x, y in leq_pairs:
        try:
            rows[index[x]] |= 1 << index[y]
        except KeyError as exc:
            raise UnknownElementError(f"unknown poset element {exc.args[0]!r}") from None
    n = len(rows)
    for k in range(n):
        kbit = 1 << k
        for i in range(n):
            if rows[i] & kbit:
                rows[i] |= rows[k]
    for i in range(n):
        for j in bits(rows[i]):
            if j != i and rows[j] >> i & 1:
                raise AntisymmetryError(labels[i], labels[j])
    return FinitePoset(labels, rows)


def hasse_edges(p: FinitePoset) -> list[tuple[Label, Label]]:
    """Covering pairs ``(x, y)``: ``x < y`` with nothing strictly between."""
    edges = []
    for x in range(p.n):
        above = p.up[x] & ~(1 << x)
        for y in bits(above):
            between = above & p.down[y] & ~(1 << y)
            if not between:
                edges.append((p.labels[x], p.labels[y]))
    return edges


# -- classification ---------------------------------------------------------

FLAGS = (
    "pointed",
    "sup_semilattice",
    "complete_lattice",
    "bc_poset",
    "cusl",
    "sl_cusl",
    "l_cusl",
    "dcpo",
    "continuous",
    "algebraic",
    "sl_domain",
    "l_domain",
    "bc_domain",
)


@dataclass(frozen=True)
class Witness:
    """Why a flag fails.

    ``subset`` has no supremum inside the principal ideal of ``ideal`` (or in
    the whole poset when ``ideal`` is None).  For the continuity flags the
    subset is the single element whose approximants misbehave.
    """

    kind: str
    subset: tuple
    ideal: Any = None

    def __str__(self) -> str:
        body = "{" + " ".join(str(x) for x in self.subset) + "}"
        where = "" if self.ideal is None else f" in down({self.ideal})"
        return f"{self.kind} {body}{where}"


@dataclass
class PosetClassReport:
    flags: dict[str, bool]
    witnesses: dict[str, Witness] = field(default_factory=dict)

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)


def _pair_masks(region: int):
    members = list(bits(region))
    for k, a in enumerate(members):
        for b in members[k + 1 :]:
            yield (1 << a) | (1 << b)


def _no_sup(p: FinitePoset, region: int, sizes=(0, 2), bounded_only=False) -> int | None:
    """First subset of ``region`` (by size) lacking a supremum inside ``region``."""
    for size in sizes:
        candidates = [0] if size == 0 else _pair_masks(region)
        for A in candidates:
            if bounded_only:
                ub = region
                for a in bits(A):
                    ub &= p.up[a]
                if not ub:
                    continue
            if p.sup_mask(A, region) is None:
                return A
    return None


def _ideal_failure(p: FinitePoset, sizes) -> tuple[int, int] | None:
    # size-first across all ideals, so witnesses are as small as possible
    for size in sizes:
        for x in range(p.n):
            A = _no_sup(p, p.down[x], sizes=(size,))
            if A is not None:
                return x, A
    return None


def _approximation_failure(p: FinitePoset, approximants) -> int | None:
    for x in range(p.n):
        A = approximants(x)
        if not p.directed_mask(A) or p.sup_mask(A) != x:
            return x
    return None


def classify_poset(p: FinitePoset, definitional: bool = False) -> PosetClassReport:
    """Evaluate every order/domain class of ``p`` from its definition.

    With ``definitional=True`` way-below and directed completeness are decided
    by enumerating directed subsets instead of the finite shortcut.
    """
    flags: dict[str, bool] = {}
    wit: dict[str, Witness] = {}
    lab = p.unmask

    def record(name, failure: Witness | None):
        flags[name] = failure is None
        if failure is not None:
            wit[name] = failure

    A = _no_sup(p, p.full, sizes=(0,))
    record("pointed", None if A is None else Witness("no-sup", ()))
    A = _no_sup(p, p.full, sizes=(2,))
    record("sup_semilattice", None if A is None else Witness("no-sup", lab(A)))
    A = _no_sup(p, p.full, sizes=(0, 2))
    record("complete_lattice", None if A is None else Witness("no-sup", lab(A)))
    A = _no_sup(p, p.full, sizes=(0, 2), bounded_only=True)
    bc = None if A is None else Witness("bounded-no-sup", lab(A))
    record("bc_poset", bc)
    # finite posets: finite up-bounded subsets are all up-bounded subsets
    record("cusl", bc)
    hit = _ideal_failure(p, (2,))
    record("sl_cusl", None if hit is None else Witness("no-sup", lab(hit[1]), p.labels[hit[0]]))
    sl_fail = wit.get("sl_cusl")
    hit = _ideal_failure(p, (0, 2))
    record("l_cusl", None if hit is None else Witness("no-sup", lab(hit[1]), p.labels[hit[0]]))
    l_fail = wit.get("l_cusl")

    dcpo_fail = None
    if not p.is_dcpo(definitional):
        D = next(D for D in p.directed_subsets() if p.sup_mask(D) is None)
        dcpo_fail = Witness("directed-no-sup", lab(D))
    record("dcpo", dcpo_fail)

    rows = p._way_below_rows(definitional)
    x = _approximation_failure(p, lambda x: rows[x])
    cont_fail = dcpo_fail or (None if x is None else Witness("not-approximated", (p.labels[x],)))
    record("continuous", cont_fail)
    K = p.compacts_mask(definitional)
    x = _approximation_failure(p, lambda x: p.down[x] & K)
    record("algebraic", dcpo_fail or (None if x is None else Witness("not-compactly-approximated", (p.labels[x],))))

    record("sl_domain", cont_fail or sl_fail)
    record("l_domain", cont_fail or l_fail)
    record("bc_domain", cont_fail or bc)
    return PosetClassReport(flags, wit)


def witness_holds(p: FinitePoset, flag: str, w: Witness) -> bool:
    """Re-check a failure witness directly against the definition."""
    if w.kind == "directed-no-sup":
        D = p.mask(w.subset)
        return p.directed_mask(D) and p.sup_mask(D) is None
    if w.kind in ("not-approximated", "not-compactly-approximated"):
        (x,) = w.subset
        i = p.index(x)
        if w.kind == "not-approximated":
            A = p._way_below_rows(False)[i]
        else:
            A = p.down[i] & p.compacts_mask()
        return not p.directed_mask(A) or p.sup_mask(A) != i
    region = p.full if w.ideal is None else p.down[p.index(w.ideal)]
    A = p.mask(w.subset)
    if A & ~region:
        return False
    if w.kind == "bounded-no-sup":
        ub = region
        for a in bits(A):
            ub &= p.up[a]
        if not ub:
            return False
    return p.sup_mask(A, region) is None


# -- isomorphism and maps -----------------------------------------------------


def are_isomorphic(p: FinitePoset, q: FinitePoset) -> dict | None:
    """Backtracking search for an order-isomorphism ``p -> q``."""
    if p.n != q.n:
        return None

    def profile(P, i):
        return (P.down[i].bit_count(), P.up[i].bit_count())

    if sorted(profile(p, i) for i in range(p.n)) != sorted(profile(q, i) for i in range(q.n)):
        return None
    buckets: dict = {}
    for j in range(q.n):
        buckets.setdefault(profile(q, j), []).append(j)
    # rarest profiles first prunes the search hardest
    order = sorted(range(p.n), key=lambda i: (len(buckets[profile(p, i)]), i))
    image = [-1] * p.n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == len(order):
            return True
        i = order[k]
        for j in buckets[profile(p, i)]:
            if used >> j & 1:
                continue
            ok = True
            for i2 in order[:k]:
                j2 = image[i2]
                if (p.up[i] >> i2 & 1) != (q.up[j] >> j2 & 1) or (p.up[i2] >> i & 1) != (
                    q.up[j2] >> j & 1
                ):
                    ok = False
                    break
            if ok:
                image[i] = j
                used |= 1 << j
                if extend(k + 1):
                    return True
                used &= ~(1 << j)
                image[i] = -1
        return False

    if not extend(0):
        return None
    f = {p.labels[i]: q.labels[image[i]] for i in range(p.n)}
    if not is_order_isomorphism(f, p, q):
        raise AssertionError("isomorphism search produced an invalid witness")
    return f


def is_order_isomorphism(f: Mapping, p: FinitePoset, q: FinitePoset) -> bool:
    """Bijection with ``x <= y`` iff ``f(x) <= f(y)``."""
    if set(f) != set(p.labels) or len(set(f.values())) != q.n or not set(f.values()) <= set(q.labels):
        return False
    return all(p.leq(x, y) == q.leq(f[x], f[y]) for x in p.labels for y in p.labels)


def _check_total(f: Mapping, p: FinitePoset, q: FinitePoset) -> None:
    missing = [x for x in p.labels if x not in f]
    if missing:
        raise PreconditionError(f"map is undefined at {missing[0]!r}")
    for x in p.labels:
        q.index(f[x])


def is_monotone(f: Mapping, p: FinitePoset, q: FinitePoset) -> bool:
    _check_total(f, p, q)
    return all(q.leq(f[x], f[y]) for x in p.labels for y in p.up_set(x))


def is_scott_continuous(f: Mapping, p: FinitePoset, q: FinitePoset) -> bool:
    """``f(sup D) == sup f(D)`` for every directed ``D`` with a supremum."""
    _check_total(f, p, q)
    idx = [q.index(f[x]) for x in p.labels]
    for D in p.directed_subsets():
        s = p.sup_mask(D)
        if s is None:
            continue
        image = 0
        for d in bits(D):
            image |= 1 << idx[d]
        if q.sup_mask(image) != idx[s]:
            return False
    return True

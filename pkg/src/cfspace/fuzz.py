"""Random instances, the theorem registry, counterexample search and shrinking.

Every generator draws from its own ``random.Random(seed)``, so an instance is
reproducible from ``GenParams`` alone.  Suite runs derive one seed per
instance from the run seed; a finding records that per-instance seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable

from . import cf, classify, induced, morphisms
from .cf import CFSpace, FiniteFamily, validate_cf_space
from .errors import (
    CFSpaceError,
    EnumerationLimitError,
    GenerationError,
    InputError,
    PreconditionError,
)
from .fileio import poset_to_file, print_poset, print_space, space_to_file
from .ga import GASpace, Relation
from .poset import FinitePoset, classify_poset, hasse_edges, make_poset
from .sets import Universe, bits, set_key, submasks

MODES = ("preorder", "transitive", "poset")


@dataclass(frozen=True)
class GenParams:
    max_universe: int = 6
    max_family: int = 8
    density: float = 0.25
    mode: str = "preorder"
    seed: int = 0
    min_universe: int = 1

    def __post_init__(self):
        if not 1 <= self.min_universe <= self.max_universe:
            raise InputError("universe bounds must satisfy 1 <= min <= max")
        if self.max_family < 1:
            raise InputError("max_family must be positive")
        if not 0.0 <= self.density <= 1.0:
            raise InputError("density must lie in [0, 1]")
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {', '.join(MODES)}")


@dataclass
class Finding:
    property: str
    instance: object
    witness: str
    shrunk: bool = False
    seed: int | None = None

    @property
    def is_poset(self) -> bool:
        return isinstance(self.instance, FinitePoset)

    def text(self) -> str:
        header = [f"property: {self.property}", f"witness: {self.witness}", f"shrunk: {'yes' if self.shrunk else 'no'}"]
        if self.seed is not None:
            header.insert(1, f"seed: {self.seed}")
        if self.is_poset:
            return print_poset(poset_to_file(self.instance, header))
        return print_space(space_to_file(self.instance, header))

    def write(self, root: Path | str) -> Path:
        ext = ".poset" if self.is_poset else ".cfspace"
        path = Path(root) / self.property / f"{self.seed if self.seed is not None else 'search'}{ext}"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.text())
        return path

    def replay(self) -> str | None:
        return REGISTRY[self.property].check(self.instance)


# -- generators ---------------------------------------------------------------


def _rng(params: GenParams, rng: random.Random | None) -> random.Random:
    return rng if rng is not None else random.Random(params.seed)


def _labels(n: int) -> list[str]:
    return [f"p{i}" for i in range(n)]


def gen_poset(params: GenParams, rng: random.Random | None = None) -> FinitePoset:
    """Edges follow a random total order, so the closure is antisymmetric."""
    rng = _rng(params, rng)
    n = rng.randint(params.min_universe, params.max_universe)
    labels = _labels(n)
    order = labels[:]
    rng.shuffle(order)
    edges = [
        (order[i], order[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < params.density
    ]
    return make_poset(labels, edges)


def _random_rows(n: int, density: float, rng: random.Random) -> list[int]:
    return [sum(1 << y for y in range(n) if rng.random() < density) for _ in range(n)]


def gen_ga_space(params: GenParams, rng: random.Random | None = None) -> GASpace:
    rng = _rng(params, rng)
    n = rng.randint(params.min_universe, params.max_universe)
    u = Universe(_labels(n))
    return GASpace(u, Relation(u, _random_rows(n, params.density, rng)))


def _gen_transitive(params: GenParams, rng: random.Random) -> GASpace:
    """Acyclic edges along a random order plus random loops; closing keeps loops local."""
    n = rng.randint(params.min_universe, params.max_universe)
    order = list(range(n))
    rng.shuffle(order)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < params.density:
                rows[order[j]] |= 1 << order[i]
    for x in range(n):
        if rng.random() < 0.5:
            rows[x] |= 1 << x
    u = Universe(_labels(n))
    return GASpace(u, Relation(u, rows))


def _random_member(n: int, rng: random.Random) -> int:
    """Mostly small sets, occasionally empty, so images stay varied."""
    if rng.random() < 0.05:
        return 0
    size = min(n, rng.choice((1, 1, 2, 2, 3)))
    return sum(1 << i for i in rng.sample(range(n), size))


def smallest_repair(ga: GASpace, K: int, bound: int) -> int | None:
    """Least ``G <= bound`` (size first) with ``K <= img(G)``."""
    for G in sorted(submasks(bound), key=set_key):
        if K & ~ga.upper_mask(G) == 0:
            return G
    return None


def gen_cf_space(params: GenParams, rng: random.Random | None = None, attempts: int = 50) -> CFSpace:
    rng = _rng(params, rng)
    if params.mode == "poset":
        return induced.induce_cf_space(gen_poset(params, rng)).space
    for _ in range(attempts):
        if params.mode == "preorder":
            ga = gen_ga_space(params, rng)
            rows = [row | 1 << x for x, row in enumerate(ga.relation.succ)]
            ga = GASpace(ga.universe, Relation(ga.universe, rows))
        else:
            ga = _gen_transitive(params, rng)
        ga = ga.transitive_closure()
        n = ga.universe.size
        k = rng.randint(1, params.max_family)
        masks = [_random_member(n, rng) for _ in range(k)]
        family = FiniteFamily(ga.universe, [ga.universe.from_mask(m) for m in masks])
        while True:
            hit = cf.cf_axiom_violation(ga, family)
            if hit is None:
                return validate_cf_space(ga, family)
            F, K = hit
            G = smallest_repair(ga, K, ga.upper_mask(F))
            if G is None:
                break
            family = FiniteFamily(ga.universe, [*family.sets, ga.universe.from_mask(G)])
    raise GenerationError(f"no valid space after {attempts} attempts (seed {params.seed})")


def with_apex(space: CFSpace, name: str = "apex") -> CFSpace:
    """Add a non-reflexive point related to every old point.

    The new point lands in the image of every nonempty member, so the image
    order, and with it every class flag except topological, is unchanged.
    """
    u = space.universe
    v = Universe([*u.names, name])
    ga = GASpace(v, Relation(v, [*space.ga.relation.succ, u.full]))
    return validate_cf_space(ga, FiniteFamily(v, [v.from_mask(m) for m in space.masks]))


def gen_monotone_map(src: FinitePoset, dst: FinitePoset, rng: random.Random, attempts: int = 20) -> dict:
    """A random monotone map ``src -> dst`` on labels.

    Elements are assigned bottom-up; each picks among the common upper bounds of
    the images below it.  When some assignment gets stuck a constant map is returned.
    """
    order = sorted(range(src.n), key=lambda i: bin(src.down[i]).count("1"))
    for _ in range(attempts):
        f: dict[int, int] = {}
        for i in order:
            allowed = dst.full
            for j in bits(src.down[i] & ~(1 << i)):
                allowed &= dst.up[f[j]]
            if not allowed:
                break
            f[i] = rng.choice(list(bits(allowed)))
        else:
            return {src.labels[i]: dst.labels[j] for i, j in f.items()}
    c = dst.labels[rng.randrange(dst.n)]
    return {x: c for x in src.labels}


def instance_seeds(seed: int, count: int, salt: str = "") -> list[int]:
    """Per-instance seeds; ``salt`` keeps runs of different modes apart."""
    rng = random.Random(f"{seed}/{salt}" if salt else seed)
    return [rng.getrandbits(63) for _ in range(count)]


# -- theorem registry -----------------------------------------------------------


@dataclass(frozen=True)
class Property:
    name: str
    kind: str  # "ga", "space" or "poset"
    check: Callable[[object], str | None]
    description: str = ""


REGISTRY: dict[str, Property] = {}


def _register(name: str, kind: str, description: str = ""):
    def wrap(fn):
        REGISTRY[name] = Property(name, kind, fn, description)
        return fn

    return wrap


def operator_law_violation(ga: GASpace) -> str | None:
    """Union preservation, duality, point law and both characterizations, for every ``X``."""
    u = ga.universe
    n, full = u.size, u.full
    if n > cf.SWEEP_LIMIT:
        raise EnumerationLimitError(f"|U| = {n}")
    up = [ga.upper_mask(X) for X in range(1 << n)]
    low = [ga.lower_mask(X) for X in range(1 << n)]
    for x in range(n):
        if up[1 << x] != ga.relation.pred[x]:
            return f"point law at {u.names[x]}"
    for X in range(1 << n):
        if up[full & ~X] != full & ~low[X]:
            return f"duality at {u.format_mask(X)}"
    for X in range(1 << n):
        for Y in range(X, 1 << n):
            if up[X | Y] != up[X] | up[Y]:
                return f"union at {u.format_mask(X)} {u.format_mask(Y)}"
    extensive = all(X & ~up[X] == 0 for X in range(1 << n))
    if extensive != ga.is_reflexive():
        return "reflexivity characterization"
    idem = all(up[up[X]] & ~up[X] == 0 for X in range(1 << n))
    if idem != ga.is_transitive():
        return "transitivity characterization"
    return None


@_register("operator-laws", "ga", "operator laws hold for every subset")
def _p_operator_laws(ga) -> str | None:
    if isinstance(ga, CFSpace):
        ga = ga.ga
    return operator_law_violation(ga)


@_register("cf-axiom", "space", "the consistency axiom holds for every K")
def _p_cf_axiom(space: CFSpace) -> str | None:
    hit = cf.cf_axiom_violation_exhaustive(space.ga, space.family)
    if hit is None:
        return None
    return f"F={space.elemset(hit[0])} K={space.elemset(hit[1])}"


@_register("closed-oracle", "space", "image-based closed sets equal the full sweep")
def _p_closed_oracle(space: CFSpace) -> str | None:
    fast = set(cf.enumerate_closed_sets(space).masks)
    slow = set(cf.enumerate_closed_sets(space, oracle=True).masks)
    if fast != slow:
        diff = sorted(fast ^ slow, key=set_key)[0]
        return f"disagree on {space.elemset(diff)}"
    return None


@_register("closed-characterizations", "space", "four closedness tests agree on every subset")
def _p_characterizations(space: CFSpace) -> str | None:
    el = space.elemset
    for E in range(1 << space.universe.size):
        s = el(E)
        answers = (
            cf.is_cf_closed(space, s),
            cf.closed_by_directed_images(space, s),
            cf.closed_by_directed_subfamily(space, s),
            cf.closed_by_capture(space, s),
        )
        if len(set(answers)) != 1:
            return f"E={s} answers={answers}"
    return None


@_register("closure-absorption", "space", "closed sets absorb approximations of their subsets")
def _p_absorption(space: CFSpace) -> str | None:
    for E in cf.enumerate_closed_sets(space).masks:
        for A in submasks(E):
            if space.upper(A) & ~E:
                return f"E={space.elemset(E)} A={space.elemset(A)}"
    return None


@_register("way-below", "space", "closed-set way-below matches the definition")
def _p_way_below(space: CFSpace) -> str | None:
    closed = cf.enumerate_closed_sets(space)
    p = closed.poset
    for a in closed.sets:
        for b in closed.sets:
            if cf.way_below_closed(space, a, b) != p.way_below(a, b, definitional=True):
                return f"E1={a} E2={b}"
    return None


@_register("basis", "space", "member images form a basis of the closed-set poset")
def _p_basis(space: CFSpace) -> str | None:
    closed = cf.enumerate_closed_sets(space)
    p = closed.poset
    basis = p.mask(space.elemset(m) for m in set(space.images))
    rows = p._way_below_rows(True)
    for i, E in enumerate(p.labels):
        approx = rows[i] & basis
        if not p.directed_mask(approx) or p.sup_mask(approx) != i:
            return f"E={E}"
    return None


@_register("topological-compacts", "space", "topological spaces: compacts are the images, poset algebraic")
def _p_topological(space: CFSpace) -> str | None:
    if not cf.is_topological(space):
        return None
    if not cf.compacts_match_basis(space, definitional=True):
        return "compacts differ from member images"
    if not classify_poset(cf.closed_set_poset(space), definitional=True).algebraic:
        return "closed-set poset is not algebraic"
    return None


@_register("witness-families", "space", "fast witness families equal the literal definitions")
def _p_witness_families(space: CFSpace) -> str | None:
    a = classify.analysis(space)
    Ms = sorted(set(a.saturation.masks) | {0}, key=set_key)
    el = space.elemset
    for m in Ms:
        for F in space.family.sets:
            fast = classify.witness_families(space, el(m), F)
            slow = classify.literal_witness_families(space, el(m), F)
            if (set(fast.s), set(fast.s_star), set(fast.sigma)) != (set(slow.s), set(slow.s_star), set(slow.sigma)):
                return f"M={el(m)} F={F}"
    return None


@_register("s-laws", "space", "uniqueness, stability and monotonicity of S and Sigma")
def _p_s_laws(space: CFSpace) -> str | None:
    a = classify.analysis(space)
    Ms = sorted(set(a.saturation.masks) | {0}, key=set_key)
    imgs = sorted(set(space.images), key=set_key)
    el = space.elemset
    for m in Ms:
        mi = space.upper(m)
        for f1 in imgs:
            for f2 in imgs:
                if mi & ~f1 or f1 & ~f2:
                    continue
                for get, name in ((a.s_image, "S"), (a.sigma_image, "Sigma")):
                    g1, g2 = get(mi, f1), get(mi, f2)
                    if g1 is not None and g2 is not None and g1 != g2:
                        return f"{name} stability M={el(m)} img(F1)={el(f1)} img(F2)={el(f2)}"
        for m2 in Ms:
            mi2 = space.upper(m2)
            if mi & ~mi2:
                continue
            for f in imgs:
                if mi2 & ~f:
                    continue
                for get, name in ((a.s_image, "S"), (a.sigma_image, "Sigma")):
                    g1, g2 = get(mi, f), get(mi2, f)
                    if g1 is not None and g2 is not None and g1 & ~g2:
                        return f"{name} monotonicity M1={el(m)} M2={el(m2)} img(F)={el(f)}"
    return None


@_register("class-implications", "space", "ultra => sl, l => sl, bc => l, topological => (ultra <=> sl)")
def _p_implications(space: CFSpace) -> str | None:
    r = classify.classify_space(space)
    return None if r.implications_hold() else f"flags {r.flags}"


@_register("class-theorems", "space", "space classes carry over to the closed-set poset")
def _p_theorems(space: CFSpace) -> str | None:
    r = classify.classify_space(space)
    pf = classify_poset(cf.closed_set_poset(space), definitional=True).flags
    for sf, dom in (("sl", "sl_domain"), ("l", "l_domain"), ("bc", "bc_domain")):
        if r.flags[sf] and not pf[dom]:
            return f"{sf} but closed poset not {dom}"
    if r.topological and r.sl and not (pf["algebraic"] and pf["sl_domain"]):
        return "topological sl but closed poset not an algebraic sL-domain"
    return None


def _poset_sup(p: FinitePoset, A: Iterable, bound) -> object:
    return p.sup_within(list(A), bound)


@_register("supremum-construction", "space", "constructive supremum equals the poset supremum")
def _p_supremum(space: CFSpace) -> str | None:
    if not classify.classify_space(space).sl:
        return None
    closed = cf.enumerate_closed_sets(space)
    p = closed.poset
    sets = closed.sets
    for E in sets:
        inside = [H for H in sets if H <= E]
        for i, H1 in enumerate(inside):
            for H2 in inside[i:]:
                got = classify.supremum_in_ideal(space, H1, H2, E, check=False)
                want = _poset_sup(p, (H1, H2), E)
                if got != want:
                    return f"H1={H1} H2={H2} E={E} got={got} want={want}"
    return None


@_register("least-construction", "space", "constructive least element equals the poset minimum")
def _p_least(space: CFSpace) -> str | None:
    if not classify.classify_space(space).l:
        return None
    closed = cf.enumerate_closed_sets(space)
    p = closed.poset
    for E in closed.sets:
        got = classify.least_in_ideal(space, E, check=False)
        want = _poset_sup(p, (), E)
        if got != want:
            return f"E={E} got={got} want={want}"
    return None


@_register("sl-cusl", "space", "topological: image poset is an sL-cusl iff the space is sl")
def _p_sl_cusl(space: CFSpace) -> str | None:
    if not cf.is_topological(space):
        return None
    crit = classify.sl_cusl_criterion(space)
    sl = classify.classify_space(space).sl
    return None if crit == sl else f"criterion={crit} sl={sl}"


@_register("principal-subspace", "space", "closed sets of a principal subspace are those below E")
def _p_principal(space: CFSpace) -> str | None:
    closed = cf.enumerate_closed_sets(space)
    for E in closed.sets:
        if not E:
            continue
        sub = cf.principal_subspace(space, E)
        got = {tuple(H) for H in cf.enumerate_closed_sets(sub).sets}
        want = {tuple(H) for H in closed.sets if H <= E}
        if got != want:
            return f"E={E}"
    return None


@_register("dense-preservation", "space", "topological sl: a representative dense subspace stays sl")
def _p_dense(space: CFSpace) -> str | None:
    r = classify.classify_space(space)
    if not (r.topological and r.sl):
        return None
    reps = {}
    for F, img in zip(space.family.sets, space.images):
        reps.setdefault(img, F)
    G = list(reps.values())
    U = space.universe.all()
    if not cf.is_dense_subspace(space, U, G):
        return "representatives are not dense"
    sub = cf.restrict_subspace(space, U, G)
    return None if classify.classify_space(sub).sl else "dense subspace is not sl"


@_register("identity-morphism", "space", "identity relation is approximable and induces the identity")
def _p_identity(space: CFSpace) -> str | None:
    h = morphisms.induced_map(morphisms.identity_relation(space))
    bad = [E for E, HE in h.items() if E != HE]
    return f"moves {bad[0]}" if bad else None


@_register("closed-dcpo", "space", "closed-set poset is a dcpo")
def _p_dcpo(space: CFSpace) -> str | None:
    p = cf.closed_set_poset(space)
    return None if p.is_dcpo(definitional=True) else "closed-set poset is not a dcpo"


@_register("roundtrip", "poset", "poset is recovered from its induced space with classes transferred")
def _p_roundtrip(p: FinitePoset) -> str | None:
    rt = induced.representation_roundtrip(p)
    return None if rt.ok else "; ".join(rt.problems)


@_register("dense-topological", "poset", "induced topological space is dense in the induced space")
def _p_dense_topological(p: FinitePoset) -> str | None:
    big, V, G = induced.topological_in_induced(p)
    if not cf.is_dense_subspace(big.space, V, G):
        return "not dense"
    cf.dense_iso(big.space, V, G)
    return None


SUITE_SPACE = tuple(n for n, prop in REGISTRY.items() if prop.kind in ("space", "ga"))
SUITE_POSET = tuple(n for n, prop in REGISTRY.items() if prop.kind == "poset")


def check_instance(instance, names: Iterable[str] | None = None) -> list[tuple[str, str]]:
    """Run registry properties on one instance; exceptions count as violations."""
    suite = SUITE_POSET if isinstance(instance, FinitePoset) else SUITE_SPACE
    names = suite if names is None else [n for n in names if n in suite]
    out = []
    for name in names:
        try:
            w = REGISTRY[name].check(instance)
        except EnumerationLimitError:
            continue
        except Exception as exc:  # a crash on a valid instance is itself a finding
            w = f"{type(exc).__name__}: {exc}"
        if w is not None:
            out.append((name, w))
    return out


def run_theorem_suite(source, budget: int, params: GenParams | None = None, names=None) -> list[Finding]:
    """Replay the registry on generated (``source`` is a mode) or given instances."""
    findings = []
    if isinstance(source, str):
        base = replace(params or GenParams(), mode=source)
        for s in instance_seeds(base.seed, budget, source):
            p = replace(base, seed=s)
            inst = gen_poset(p) if source == "poset" else gen_cf_space(p)
            for name, w in check_instance(inst, names):
                findings.append(Finding(name, inst, w, seed=s))
            if source == "poset":
                # the induced space is what failed, so it is what gets saved
                space = induced.induce_cf_space(inst).space
                for name, w in check_instance(space, names):
                    findings.append(Finding(name, space, f"induced by poset seed {s}: {w}", seed=s))
    else:
        for k, inst in enumerate(list(source)[:budget]):
            for name, w in check_instance(inst, names):
                findings.append(Finding(name, inst, w, seed=k))
    return findings


# -- counterexample search ------------------------------------------------------


def _target_sl_not_ultra(space: CFSpace) -> str | None:
    r = classify.classify_space(space)
    if r.sl and not r.ultra_sl:
        M, F = r.witnesses["ultra_sl"]
        return f"ultra_sl fails at M={M} F={F}"
    return None


def _target_sl_not_ultra_topological(space: CFSpace) -> str | None:
    return _target_sl_not_ultra(space) if cf.is_topological(space) else None


def _target_l_not_sl(space: CFSpace) -> str | None:
    r = classify.classify_space(space)
    if r.l and not r.sl:
        M, F = r.witnesses["sl"]
        return f"sl fails at M={M} F={F}"
    return None


def _target_non_dcpo(space: CFSpace) -> str | None:
    return _p_dcpo(space)


TARGETS: dict[str, Callable[[CFSpace], str | None]] = {
    "sl-and-not-ultra": _target_sl_not_ultra,
    "sl-and-not-ultra-topological": _target_sl_not_ultra_topological,
    "l-implies-sl-violation": _target_l_not_sl,
    "non-dcpo-closed-poset": _target_non_dcpo,
}

# bounds for the exhaustive phase of a search
EXHAUSTIVE_UNIVERSE = 3
EXHAUSTIVE_FAMILY = 4


def _transitive_relations(n: int, topological: bool):
    u = Universe(_labels(n))
    cells = n * n
    for code in range(1 << cells):
        rows = [(code >> (x * n)) & ((1 << n) - 1) for x in range(n)]
        if topological and not all(rows[x] >> x & 1 for x in range(n)):
            continue
        ga = GASpace(u, Relation(u, rows))
        if ga.is_transitive():
            yield ga


def exhaustive_spaces(max_universe: int = EXHAUSTIVE_UNIVERSE, max_family: int = EXHAUSTIVE_FAMILY, topological: bool = False):
    """Every valid space up to the bounds, smallest first (deterministic)."""
    for n in range(1, max_universe + 1):
        for ga in _transitive_relations(n, topological):
            u = ga.universe
            for k in range(1, max_family + 1):
                for masks in combinations(range(1 << n), k):
                    family = FiniteFamily(u, [u.from_mask(m) for m in masks])
                    if cf.cf_axiom_violation(ga, family) is None:
                        yield validate_cf_space(ga, family)


@dataclass
class SearchStats:
    examined: int = 0
    exhaustive_done: bool = False
    random_examined: int = 0


def search_counterexample(
    name: str,
    params: GenParams | None = None,
    budget: int = 10000,
    stats: SearchStats | None = None,
) -> Finding | None:
    """Exhaustive over small spaces, then random; the first hit is shrunk and returned."""
    if name not in TARGETS:
        raise InputError(f"unknown search target {name!r}; known: {', '.join(TARGETS)}")
    target = TARGETS[name]
    topological = name.endswith("-topological")
    params = params or GenParams(mode="preorder" if topological else "transitive")
    stats = stats if stats is not None else SearchStats()

    def found(space, seed):
        w = target(space)
        small = shrink(space, target)
        return Finding(name, small, target(small) or w, shrunk=small is not space, seed=seed)

    for space in exhaustive_spaces(topological=topological):
        if stats.examined >= budget:
            return None
        stats.examined += 1
        if target(space) is not None:
            return found(space, None)
    stats.exhaustive_done = True
    for s in instance_seeds(params.seed, budget - stats.examined):
        stats.examined += 1
        stats.random_examined += 1
        try:
            space = gen_cf_space(replace(params, seed=s))
        except GenerationError:
            continue
        if target(space) is not None:
            return found(space, s)
    return None


# -- shrinking ------------------------------------------------------------------


def _space_candidates(space: CFSpace):
    u = space.universe
    n = u.size
    succ = space.ga.relation.succ
    for x in range(n):
        if n == 1:
            break
        keep = [i for i in range(n) if i != x]
        sub = Universe(u.names[i] for i in keep)
        pos = {old: new for new, old in enumerate(keep)}

        def proj(mask, pos=pos):
            return sum(1 << pos[i] for i in bits(mask) if i in pos)

        rows = [proj(succ[i]) for i in keep]
        members = [sub.from_mask(proj(m)) for m in space.masks]
        yield GASpace(sub, Relation(sub, rows)), members
    for x in range(n):
        for y in bits(succ[x]):
            rows = list(succ)
            rows[x] &= ~(1 << y)
            yield GASpace(u, Relation(u, rows)), list(space.family.sets)
    if len(space.family) > 1:
        for k in range(len(space.family)):
            members = [s for j, s in enumerate(space.family.sets) if j != k]
            yield space.ga, members


def _poset_candidates(p: FinitePoset):
    if p.n > 1:
        for x in p.labels:
            yield p.subposet([y for y in p.labels if y != x])
    covers = hasse_edges(p)
    for k in range(len(covers)):
        yield make_poset(p.labels, covers[:k] + covers[k + 1 :])


def _size(instance) -> tuple:
    if isinstance(instance, FinitePoset):
        return (instance.n, len(hasse_edges(instance)))
    return (instance.universe.size, len(instance.ga.relation), len(instance.family))


def shrink(instance, predicate: Callable[[object], object]):
    """Greedy single deletions until none keeps ``predicate`` true."""
    if not predicate(instance):
        raise PreconditionError("predicate does not hold on the instance to shrink")
    current = instance
    changed = True
    while changed:
        changed = False
        if isinstance(current, FinitePoset):
            candidates = _poset_candidates(current)
        else:
            candidates = (
                _validated(ga, members) for ga, members in _space_candidates(current)
            )
        for cand in candidates:
            if cand is None or _size(cand) >= _size(current):
                continue
            try:
                ok = predicate(cand)
            except CFSpaceError:
                ok = False
            if ok:
                current = cand
                changed = True
                break
    return current


def _validated(ga: GASpace, members) -> CFSpace | None:
    try:
        return validate_cf_space(ga, FiniteFamily(ga.universe, members))
    except CFSpaceError:
        return None


def corrupt(space: CFSpace) -> CFSpace:
    """A copy whose family breaks the consistency axiom, for harness self-tests."""
    ga = space.ga
    u = ga.universe
    # a member whose image is nonempty but no member can interpolate
    for m in range(1, 1 << u.size):
        fam = FiniteFamily(u, [u.from_mask(m)])
        if cf.cf_axiom_violation(ga, fam) is not None:
            return CFSpace.unchecked(ga, fam)
    # preorders accept every family; drop reflexivity and retry on a chain of two
    v = Universe(["a", "b", "c"])
    bad = GASpace(v, Relation(v, [0b110, 0b100, 0]))
    return CFSpace.unchecked(bad, FiniteFamily(v, [v.set(["b"])]))


__all__ = [
    "GenParams",
    "Finding",
    "Property",
    "REGISTRY",
    "TARGETS",
    "SearchStats",
    "gen_poset",
    "gen_ga_space",
    "gen_cf_space",
    "instance_seeds",
    "with_apex",
    "gen_monotone_map",
    "check_instance",
    "run_theorem_suite",
    "search_counterexample",
    "exhaustive_spaces",
    "shrink",
    "corrupt",
    "operator_law_violation",
]

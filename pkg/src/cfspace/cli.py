"""Command-line entry point.

Exit codes: 0 success, 1 a checked condition fails, 2 bad input or I/O,
3 the fuzzer produced findings.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import cf, classify, fuzz, induced, morphisms
from .errors import CFSpaceError, DensityError, EnumerationLimitError, InputError, ViolationError
from .fileio import (
    closed_poset_dot,
    parse_arrows,
    parse_poset,
    parse_space,
    print_space,
    resolve_arrows,
    space_to_file,
)
from .poset import FLAGS, classify_poset

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_FINDINGS = 0, 1, 2, 3


class _Fail(Exception):
    """A checked condition failed; the message has already been printed."""


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _located(path: str, fn, text):
    try:
        return fn(text)
    except InputError as exc:
        raise InputError(f"{path}:{exc}") from None


def _load_space(path: str, close: bool = False) -> cf.CFSpace:
    sf = _located(path, parse_space, _read(path))
    try:
        return sf.build(close)
    except InputError:
        raise
    except ViolationError as exc:
        print(f"invalid: {exc}")
        raise _Fail() from None


def _load_poset(path: str):
    pf = _located(path, parse_poset, _read(path))
    try:
        return pf.build()
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc.strerror}") from None


# -- commands ---------------------------------------------------------------------


def cmd_check(args) -> int:
    _load_space(args.file, args.close)
    print("valid")
    return EXIT_OK


def cmd_closed(args) -> int:
    space = _load_space(args.file)
    fast = cf.enumerate_closed_sets(space)
    for E in fast:
        print(E)
    if args.oracle:
        slow = cf.enumerate_closed_sets(space, oracle=True)
        if fast.masks != slow.masks:
            extra = [str(E) for E in slow if E not in fast]
            missing = [str(E) for E in fast if E not in slow]
            print(f"oracle mismatch: only in sweep {extra}, only in fast path {missing}")
            return EXIT_FAIL
    return EXIT_OK


def cmd_classify(args) -> int:
    space = _load_space(args.file)
    r = classify.classify_space(space)
    print(" ".join(f"{name}={_yn(r.flags[name])}" for name in classify.SPACE_FLAGS))
    for name in classify.SPACE_FLAGS:
        if name in r.witnesses:
            M, F = r.witnesses[name]
            print(f"{name}: M={M} F={F}")
    return EXIT_OK


def cmd_domain(args) -> int:
    r = classify_poset(_load_poset(args.file))
    print(" ".join(f"{name}={_yn(r.flags[name])}" for name in FLAGS))
    for name in FLAGS:
        if name in r.witnesses:
            print(f"{name}: {r.witnesses[name]}")
    return EXIT_OK


def cmd_induce(args) -> int:
    ind = induced.induce_cf_space(_load_poset(args.file), reduced=args.reduced)
    header = ["reduced family: singletons and two-element topped sets"] if args.reduced else []
    _emit(print_space(space_to_file(ind.space, header)), args.output)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    p = _load_poset(args.file)
    rt = induced.representation_roundtrip(p)
    for label in p.labels:
        print(f"{label} -> {rt.iso[label]}")
    print(" ".join(f"{sf}={_yn(a)}/{_yn(b)}" for sf, (a, b) in rt.transfer.items()))
    if rt.ok:
        print("ok")
        return EXIT_OK
    for problem in rt.problems:
        print(f"failed: {problem}")
    return EXIT_FAIL


def _split(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


def cmd_dense(args) -> int:
    space = _load_space(args.file)
    u = space.universe
    V = u.set(_split(args.elements))
    try:
        idx = [int(t) for t in _split(args.family_indices)]
    except ValueError:
        raise InputError(f"bad family index list {args.family_indices!r}") from None
    for i in idx:
        if not 0 <= i < len(space.family):
            raise InputError(f"family index {i} out of range 0..{len(space.family) - 1}")
    G = [space.family.sets[i] for i in idx]
    try:
        iso = cf.dense_iso(space, V, G)
    except DensityError as exc:
        print(f"not dense: {exc}")
        hit = cf.density_violation(space, V, G)
        if hit is not None:
            print(f"uncaptured: K={hit[0]} F={hit[1]}")
        return EXIT_FAIL
    except ViolationError as exc:
        print(f"invalid subspace: {exc}")
        return EXIT_FAIL
    print("dense")
    for E, H in iso.items():
        print(f"{E} -> {H}")
    return EXIT_OK


def cmd_morphism(args) -> int:
    src = _load_space(args.src)
    dst = _load_space(args.dst)
    af = _located(args.arrows, parse_arrows, _read(args.arrows))
    arrows = _located(args.arrows, lambda a: resolve_arrows(a, src, dst), af)
    violations = morphisms.approximable_violations(src, dst, arrows)
    if violations:
        print("invalid")
        for v in violations:
            print(v)
        return EXIT_FAIL
    theta = morphisms.validate_approximable(src, dst, arrows)
    print("valid")
    for E, H in morphisms.induced_map(theta).items():
        print(f"{E} -> {H}")
    return EXIT_OK


def cmd_poset(args) -> int:
    space = _load_space(args.file)
    _emit(closed_poset_dot(space), args.dot)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    if args.budget < 0:
        raise InputError("budget must be nonnegative")
    params = fuzz.GenParams(max_universe=args.max_universe, seed=args.seed)
    findings: list[fuzz.Finding] = []
    if args.property in fuzz.TARGETS:
        stats = fuzz.SearchStats()
        mode = "preorder" if args.property.endswith("-topological") else "transitive"
        hit = fuzz.search_counterexample(args.property, replace(params, mode=mode), args.budget, stats)
        phase = "complete" if stats.exhaustive_done else "partial"
        print(f"{args.property}: examined {stats.examined} spaces, exhaustive phase {phase}")
        if hit is not None:
            findings.append(hit)
    else:
        if args.property is not None and args.property not in fuzz.REGISTRY:
            known = sorted([*fuzz.REGISTRY, *fuzz.TARGETS])
            raise InputError(f"unknown property {args.property!r}; known: {', '.join(known)}")
        names = None if args.property is None else [args.property]
        for mode in fuzz.MODES:
            if names is not None and fuzz.REGISTRY[args.property].kind == "poset" and mode != "poset":
                continue
            mp = replace(params, mode=mode, max_universe=min(args.max_universe, 6) if mode == "poset" else args.max_universe)
            found = fuzz.run_theorem_suite(mode, args.budget, mp, names)
            print(f"{mode}: {args.budget} instances, {len(found)} findings")
            findings += found
    for f in findings:
        path = f.write(args.findings_dir)
        print(f"finding {f.property}: {f.witness} -> {path}")
    return EXIT_FINDINGS if findings else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cfspace", description="Finite CF-approximation spaces and their closed-set domains.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a space file")
    p.add_argument("file")
    p.add_argument("--close", action="store_true", help="take the transitive closure of the relation first")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("closed", help="list closed sets")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="cross-check against a sweep over all subsets")
    p.set_defaults(func=cmd_closed)

    p = sub.add_parser("classify", help="ultra-sL / sL / L / bc classification")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("domain", help="domain-class flags of a poset file")
    p.add_argument("file")
    p.set_defaults(func=cmd_domain)

    p = sub.add_parser("induce", help="write the space induced by a poset")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--reduced", action="store_true", help="singletons and two-element topped sets only")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("roundtrip", help="recover a poset from its induced space")
    p.add_argument("file")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("dense", help="dense-subspace check with the intersection isomorphism")
    p.add_argument("file")
    p.add_argument("--elements", required=True, help="comma-separated elements of V")
    p.add_argument("--family-indices", required=True, help="comma-separated 0-based indices of @set lines")
    p.set_defaults(func=cmd_dense)

    p = sub.add_parser("morphism", help="validate an approximable relation and print its induced map")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("arrows")
    p.set_defaults(func=cmd_morphism)

    p = sub.add_parser("poset", help="export the closed-set poset")
    p.add_argument("file")
    p.add_argument("--dot", required=True, help="output path for the DOT file")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("fuzz", help="theorem suite or targeted counterexample search")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--property")
    p.add_argument("--max-universe", type=int, default=6)
    p.add_argument("--findings-dir", default="findings")
    p.set_defaults(func=cmd_fuzz)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail:
        return EXIT_FAIL
    except (InputError, EnumerationLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CFSpaceError as exc:
        print(f"invalid: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

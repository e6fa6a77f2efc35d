"""Golden CLI cases shared by the CLI tests and the acceptance suite.

Each case runs ``cfspace`` in the fixture directory.  Expected stdout lives in
``golden/<name>.out``, stderr (when nonempty) in ``golden/<name>.err``, and a
file written through ``{out}`` in ``golden/<name>.file``.  Set
``CFSPACE_REGEN_GOLDEN=1`` to rewrite them after a deliberate output change.
"""

from __future__ import annotations

import contextlib
import io
import os
from dataclasses import dataclass
from pathlib import Path

from cfspace.cli import main
from cfspace.errors import InputError
from cfspace.fileio import parse_arrows, parse_poset, parse_space, print_arrows, print_poset, print_space

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"
REGEN = os.environ.get("CFSPACE_REGEN_GOLDEN") == "1"


@dataclass(frozen=True)
class Case:
    name: str
    args: tuple[str, ...]
    exit: int


CASES = [
    Case("check-pre1", ("check", "pre1.cfspace"), 0),
    Case("check-nt1", ("check", "nt1.cfspace"), 0),
    Case("check-chain3s-b", ("check", "chain3s_b.cfspace"), 1),
    Case("check-not-transitive", ("check", "not_transitive.cfspace"), 1),
    Case("check-open", ("check", "chain3s_open.cfspace"), 1),
    Case("check-open-close", ("check", "--close", "chain3s_open.cfspace"), 0),
    Case("check-dangling", ("check", "dangling.cfspace"), 2),
    Case("check-bad-token", ("check", "bad_token.cfspace"), 2),
    Case("check-unknown-directive", ("check", "unknown_directive.cfspace"), 2),
    Case("check-duplicate", ("check", "duplicate.cfspace"), 2),
    Case("check-missing", ("check", "missing.cfspace"), 2),
    Case("closed-pre1", ("closed", "--oracle", "pre1.cfspace"), 0),
    Case("closed-nt1", ("closed", "nt1.cfspace"), 0),
    Case("closed-empty-member", ("closed", "--oracle", "with_empty.cfspace"), 0),
    Case("closed-two-tops", ("closed", "--oracle", "two_tops.cfspace"), 0),
    Case("closed-vee", ("closed", "--oracle", "vee_induced.cfspace"), 0),
    Case("closed-invalid", ("closed", "chain3s_b.cfspace"), 1),
    Case("classify-vee", ("classify", "vee_induced.cfspace"), 0),
    Case("classify-bowtie", ("classify", "bowtie_induced.cfspace"), 0),
    Case("classify-diamond", ("classify", "diamond_induced.cfspace"), 0),
    Case("classify-nt1", ("classify", "nt1.cfspace"), 0),
    Case("classify-two-tops", ("classify", "two_tops.cfspace"), 0),
    Case("domain-vee", ("domain", "vee.poset"), 0),
    Case("domain-bowtie", ("domain", "bowtie.poset"), 0),
    Case("domain-diamond", ("domain", "diamond.poset"), 0),
    Case("domain-chain3", ("domain", "chain3.poset"), 0),
    Case("domain-cycle", ("domain", "cycle.poset"), 2),
    Case("induce-vee", ("induce", "vee.poset"), 0),
    Case("induce-bowtie-file", ("induce", "bowtie.poset", "-o", "{out}"), 0),
    Case("induce-chain3-reduced", ("induce", "--reduced", "chain3.poset"), 0),
    Case("roundtrip-vee", ("roundtrip", "vee.poset"), 0),
    Case("roundtrip-bowtie", ("roundtrip", "bowtie.poset"), 0),
    Case("roundtrip-diamond", ("roundtrip", "diamond.poset"), 0),
    Case("roundtrip-chain3", ("roundtrip", "chain3.poset"), 0),
    Case("dense-pre1-self", ("dense", "pre1.cfspace", "--elements", "a,b", "--family-indices", "0,1"), 0),
    Case("dense-pre1-a", ("dense", "pre1.cfspace", "--elements", "a", "--family-indices", "0"), 1),
    Case("dense-nt2", ("dense", "nt2.cfspace", "--elements", "b", "--family-indices", "1"), 1),
    Case("dense-diamond", ("dense", "diamond_induced.cfspace", "--elements", "bot,a,b,top", "--family-indices", "0,1,2,3,4,5,6,7,8,9,10,11,12"), 0),
    Case("dense-bad-index", ("dense", "pre1.cfspace", "--elements", "a", "--family-indices", "5"), 2),
    Case("morphism-identity", ("morphism", "pre1.cfspace", "pre1.cfspace", "pre1_identity.arrows"), 0),
    Case("morphism-bottom", ("morphism", "vee_induced.cfspace", "diamond_induced.cfspace", "vee_to_diamond_bot.arrows"), 0),
    Case("morphism-invalid", ("morphism", "vee_induced.cfspace", "diamond_induced.cfspace", "vee_to_diamond_bad.arrows"), 1),
    Case("morphism-dangling", ("morphism", "vee_induced.cfspace", "diamond_induced.cfspace", "vee_to_diamond_dangling.arrows"), 2),
    Case("poset-vee", ("poset", "vee_induced.cfspace", "--dot", "{out}"), 0),
    Case("poset-two-tops", ("poset", "two_tops.cfspace", "--dot", "{out}"), 0),
    Case("fuzz-suite", ("fuzz", "--budget", "4", "--seed", "1", "--max-universe", "5", "--findings-dir", "{out}"), 0),
    Case("fuzz-search", ("fuzz", "--budget", "40", "--seed", "1", "--property", "l-implies-sl-violation"), 0),
    Case("fuzz-unknown", ("fuzz", "--budget", "1", "--seed", "1", "--property", "nope"), 2),
]


@dataclass
class Outcome:
    exit: int
    stdout: str
    stderr: str
    file: str | None


def run_case(case: Case, tmp: Path) -> Outcome:
    out = tmp / f"{case.name}.result"
    args = [a.replace("{out}", str(out)) for a in case.args]
    so, se = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIXTURES)
    try:
        with contextlib.redirect_stdout(so), contextlib.redirect_stderr(se):
            code = main(args)
    finally:
        os.chdir(cwd)
    text = out.read_text() if out.is_file() else None
    return Outcome(code, so.getvalue(), se.getvalue(), text)


def expected(case: Case) -> tuple[str, str, str | None]:
    f = GOLDEN / f"{case.name}.file"
    e = GOLDEN / f"{case.name}.err"
    return (
        (GOLDEN / f"{case.name}.out").read_text(),
        e.read_text() if e.exists() else "",
        f.read_text() if f.exists() else None,
    )


def write_golden(case: Case, got: Outcome) -> None:
    GOLDEN.mkdir(exist_ok=True)
    (GOLDEN / f"{case.name}.out").write_text(got.stdout)
    for suffix, body in ((".err", got.stderr), (".file", got.file)):
        path = GOLDEN / f"{case.name}{suffix}"
        if body:
            path.write_text(body)
        elif path.exists():
            path.unlink()


def check_case(case: Case, tmp: Path) -> list[str]:
    """Problems with one case; empty when output and exit code match."""
    got = run_case(case, tmp)
    if REGEN:
        write_golden(case, got)
    problems = []
    if got.exit != case.exit:
        problems.append(f"exit {got.exit}, expected {case.exit}")
    out, err, file = expected(case)
    if got.stdout != out:
        problems.append("stdout differs")
    if got.stderr != err:
        problems.append("stderr differs")
    if got.file != file:
        problems.append("written file differs")
    return problems


FIXTURE_FILES = sorted(p.name for p in FIXTURES.iterdir() if p.suffix in (".cfspace", ".poset", ".arrows"))

PARSERS = {
    ".cfspace": (parse_space, print_space),
    ".poset": (parse_poset, print_poset),
    ".arrows": (parse_arrows, print_arrows),
}

# fixtures that exist to exercise parse errors
MALFORMED = {"bad_token.cfspace", "dangling.cfspace", "duplicate.cfspace", "unknown_directive.cfspace"}


def round_trip_problems(path: Path) -> list[str]:
    """``parse(print(parse(text)))`` must equal the parse, and printing must be stable."""
    parse, show = PARSERS[path.suffix]
    try:
        parsed = parse(path.read_text())
    except InputError as exc:
        return [] if path.name in MALFORMED else [f"does not parse: {exc}"]
    if path.name in MALFORMED:
        return ["malformed fixture parsed"]
    text = show(parsed)
    problems = []
    if parse(text) != parsed:
        problems.append("parse(print(x)) != x")
    if show(parse(text)) != text:
        problems.append("printing is not stable")
    return problems

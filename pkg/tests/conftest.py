from __future__ import annotations

from pathlib import Path

import pytest

from cfspace.cf import build_space
from cfspace.ga import GASpace
from cfspace.poset import make_poset

FIXTURES = Path(__file__).parent / "fixtures"

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
# informational lines (bounded searches), printed after the criteria
REPORT: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE and not REPORT:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        tr.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    for line in REPORT:
        tr.write_line(f"report: {line}")


CHAIN3S_PAIRS = [("a", "b"), ("a", "c"), ("b", "c")]
PRE1_PAIRS = [("a", "a"), ("a", "b"), ("b", "b")]


@pytest.fixture
def chain3s_ga():
    return GASpace.build("abc", CHAIN3S_PAIRS)


@pytest.fixture
def pre1_ga():
    return GASpace.build("ab", PRE1_PAIRS)


@pytest.fixture
def pre1():
    return build_space("ab", PRE1_PAIRS, [["a"], ["a", "b"]])


@pytest.fixture
def nt1():
    return build_space("ab", [("a", "a"), ("a", "b")], [["a"]])


def vee_poset():
    return make_poset("xyz", [("x", "z"), ("y", "z")])


def bowtie_poset():
    return make_poset(
        ["bot", "a", "b", "t1", "t2"],
        [("bot", "a"), ("bot", "b"), ("a", "t1"), ("b", "t1"), ("a", "t2"), ("b", "t2")],
    )


def diamond_poset():
    return make_poset(["bot", "a", "b", "top"], [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])


def chain3_poset():
    return make_poset(["p0", "p1", "p2"], [("p0", "p1"), ("p1", "p2")])


@pytest.fixture
def vee():
    return vee_poset()


@pytest.fixture
def bowtie():
    return bowtie_poset()


@pytest.fixture
def diamond():
    return diamond_poset()


@pytest.fixture
def chain3():
    return chain3_poset()


def S(space, *names):
    """Shorthand: the set of ``names`` in the universe of ``space``."""
    u = space.universe
    return u.set(names)

"""Text formats for spaces, posets and arrow lists, plus DOT export.

All three formats are line oriented, ``#`` starts a comment, and tokens match
``[A-Za-z0-9_]+``::

    @elements a b c
    @pair a b          # a R b
    @set a b           # family member; a bare "@set" is the empty set

    @elements x y z
    @leq x z

    @arrow a b -> u v
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .cf import CFSpace, FiniteFamily, closed_set_poset, validate_cf_space
from .errors import ParseError
from .ga import GASpace
from .poset import FinitePoset, hasse_edges, make_poset
from .sets import TOKEN, Universe, bits

_WORD = re.compile(r"\S+")


def _lines(text: str):
    """Yield ``(line_no, [(column, word), ...])`` for each non-blank line."""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        words = [(m.start() + 1, m.group()) for m in _WORD.finditer(line)]
        if words:
            yield no, words


def _check_token(no: int, col: int, word: str) -> str:
    if not TOKEN.match(word):
        raise ParseError(f"bad token {word!r}", no, col)
    return word


def _elements(no: int, words, seen_elements: bool) -> tuple[str, ...]:
    if seen_elements:
        raise ParseError("second @elements line", no, words[0][0])
    names: list[str] = []
    for col, w in words[1:]:
        _check_token(no, col, w)
        if w in names:
            raise ParseError(f"duplicate element {w!r}", no, col)
        names.append(w)
    return tuple(names)


def _refs(no: int, words, declared: tuple[str, ...]) -> tuple[str, ...]:
    """Resolve element references, returning them in universe order."""
    order = {name: i for i, name in enumerate(declared)}
    out = []
    for col, w in words:
        _check_token(no, col, w)
        if w not in order:
            raise ParseError(f"undeclared element {w!r}", no, col)
        if w in out:
            raise ParseError(f"element {w!r} repeated", no, col)
        out.append(w)
    return tuple(sorted(out, key=order.__getitem__))


# -- spaces -------------------------------------------------------------------


@dataclass
class SpaceFile:
    elements: tuple[str, ...]
    pairs: list[tuple[str, str]] = field(default_factory=list)
    sets: list[tuple[str, ...]] = field(default_factory=list)
    header: list[str] = field(default_factory=list, compare=False)

    def ga(self, close: bool = False) -> GASpace:
        ga = GASpace.build(self.elements, self.pairs)
        return ga.transitive_closure() if close else ga

    def family(self, ga: GASpace) -> FiniteFamily:
        return FiniteFamily.of(ga.universe, *self.sets)

    def build(self, close: bool = False) -> CFSpace:
        ga = self.ga(close)
        return validate_cf_space(ga, self.family(ga))


def parse_space(text: str) -> SpaceFile:
    declared = None
    pairs: list[tuple[str, str]] = []
    sets: list[tuple[str, ...]] = []
    for no, words in _lines(text):
        col, head = words[0]
        if head == "@elements":
            declared = _elements(no, words, declared is not None)
        elif head == "@pair":
            if len(words) != 3:
                raise ParseError("@pair takes exactly two elements", no, col)
            if declared is None:
                raise ParseError("@pair before @elements", no, col)
            for c, w in words[1:]:
                _check_token(no, c, w)
                if w not in declared:
                    raise ParseError(f"undeclared element {w!r}", no, c)
            pair = (words[1][1], words[2][1])
            if pair not in pairs:
                pairs.append(pair)
        elif head == "@set":
            if declared is None:
                raise ParseError("@set before @elements", no, col)
            sets.append(_refs(no, words[1:], declared))
        else:
            raise ParseError(f"unknown directive {head!r}", no, col)
    if declared is None:
        raise ParseError("missing @elements line", 1, 1)
    order = {name: i for i, name in enumerate(declared)}
    pairs.sort(key=lambda p: (order[p[0]], order[p[1]]))
    return SpaceFile(declared, pairs, sets)


def _set_line(names) -> str:
    return " ".join(["@set", *names]) if names else "@set"


def print_space(sf: SpaceFile) -> str:
    lines = [f"# {h}" for h in sf.header]
    lines.append(" ".join(["@elements", *sf.elements]))
    lines += [f"@pair {x} {y}" for x, y in sf.pairs]
    lines += [_set_line(s) for s in sf.sets]
    return "\n".join(lines) + "\n"


def space_to_file(space: CFSpace, header=()) -> SpaceFile:
    u = space.universe
    return SpaceFile(
        u.names,
        space.ga.relation.pairs(),
        [tuple(u.names[i] for i in bits(m)) for m in space.masks],
        list(header),
    )


# -- posets -------------------------------------------------------------------


@dataclass
class PosetFile:
    elements: tuple[str, ...]
    leq: list[tuple[str, str]] = field(default_factory=list)
    header: list[str] = field(default_factory=list, compare=False)

    def build(self) -> FinitePoset:
        return make_poset(self.elements, self.leq)


def parse_poset(text: str) -> PosetFile:
    declared = None
    leq: list[tuple[str, str]] = []
    for no, words in _lines(text):
        col, head = words[0]
        if head == "@elements":
            declared = _elements(no, words, declared is not None)
        elif head == "@leq":
            if len(words) != 3:
                raise ParseError("@leq takes exactly two elements", no, col)
            if declared is None:
                raise ParseError("@leq before @elements", no, col)
            for c, w in words[1:]:
                _check_token(no, c, w)
                if w not in declared:
                    raise ParseError(f"undeclared element {w!r}", no, c)
            leq.append((words[1][1], words[2][1]))
        else:
            raise ParseError(f"unknown directive {head!r}", no, col)
    if declared is None:
        raise ParseError("missing @elements line", 1, 1)
    return PosetFile(declared, leq)


def print_poset(pf: PosetFile) -> str:
    lines = [f"# {h}" for h in pf.header]
    lines.append(" ".join(["@elements", *pf.elements]))
    lines += [f"@leq {x} {y}" for x, y in pf.leq]
    return "\n".join(lines) + "\n"


def poset_to_file(p: FinitePoset, header=()) -> PosetFile:
    """Covering pairs only; labels are rendered with ``str``."""
    return PosetFile(
        tuple(str(x) for x in p.labels),
        [(str(x), str(y)) for x, y in hasse_edges(p)],
        list(header),
    )


# -- arrows -------------------------------------------------------------------


@dataclass
class ArrowFile:
    arrows: list[tuple[tuple[str, ...], tuple[str, ...]]] = field(default_factory=list)
    # source line of each arrow, for error positions
    lines: list[int] = field(default_factory=list, compare=False)


def parse_arrows(text: str) -> ArrowFile:
    arrows = []
    numbers = []
    for no, words in _lines(text):
        col, head = words[0]
        if head != "@arrow":
            raise ParseError(f"unknown directive {head!r}", no, col)
        arrow_at = [i for i, (_, w) in enumerate(words) if w == "->"]
        if len(arrow_at) != 1:
            raise ParseError("@arrow needs exactly one '->'", no, col)
        k = arrow_at[0]
        sides = []
        for part in (words[1:k], words[k + 1 :]):
            names = []
            for c, w in part:
                _check_token(no, c, w)
                if w in names:
                    raise ParseError(f"element {w!r} repeated", no, c)
                names.append(w)
            sides.append(tuple(names))
        arrows.append((sides[0], sides[1]))
        numbers.append(no)
    return ArrowFile(arrows, numbers)


def print_arrows(af: ArrowFile) -> str:
    lines = []
    for left, right in af.arrows:
        lines.append(" ".join(["@arrow", *left, "->", *right]))
    return "\n".join(lines) + ("\n" if lines else "")


def resolve_arrows(af: ArrowFile, src: CFSpace, dst: CFSpace, source_name: str = "arrows"):
    """Map each arrow to a pair of family members; unknown sets are a parse error."""
    out = []
    numbers = af.lines or range(1, len(af.arrows) + 1)
    for no, (left, right) in zip(numbers, af.arrows):
        pair = []
        for names, space in ((left, src), (right, dst)):
            u: Universe = space.universe
            unknown = [w for w in names if w not in u]
            if unknown:
                raise ParseError(f"undeclared element {unknown[0]!r} in {source_name}", no)
            s = u.set(names)
            if s not in space.family:
                raise ParseError(f"{s} is not a family member", no)
            pair.append(s)
        out.append(tuple(pair))
    return out


# -- DOT ----------------------------------------------------------------------


def closed_poset_dot(space: CFSpace, name: str = "closed") -> str:
    """Hasse diagram of the closed-set poset, edges pointing upward."""
    p = closed_set_poset(space)
    ids = {label: f"n{i}" for i, label in enumerate(p.labels)}
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for label in p.labels:
        lines.append(f'  {ids[label]} [label="{label}"];')
    for x, y in hasse_edges(p):
        lines.append(f"  {ids[x]} -> {ids[y]};")
    lines.append("}")
    return "\n".join(lines) + "\n"

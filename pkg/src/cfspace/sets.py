"""Finite universes and bit-indexed subsets of them."""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .errors import InputError, UniverseMismatchError, UnknownElementError

TOKEN = re.compile(r"[A-Za-z0-9_]+\Z")


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask`` (including 0 and ``mask``) in increasing order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        # next submask in increasing numeric order
        sub = (sub - mask) & mask


def set_key(mask: int) -> tuple:
    """Canonical ordering of subsets: by size, then lexicographically by indices."""
    return (mask.bit_count(), tuple(bits(mask)))


class Universe:
    """An immutable ordered carrier of named elements."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        index = {}
        for i, name in enumerate(names):
            if not isinstance(name, str) or not TOKEN.match(name):
                raise InputError(f"bad element token {name!r}")
            if name in index:
                raise InputError(f"duplicate element {name!r}")
            index[name] = i
        self.names = names
        self._index = index

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElementError(f"unknown element {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def set(self, names: Iterable[str] = ()) -> "ElemSet":
        return ElemSet(self, self.mask_of(names))

    def from_mask(self, mask: int) -> "ElemSet":
        return ElemSet(self, mask)

    def empty(self) -> "ElemSet":
        return ElemSet(self, 0)

    def all(self) -> "ElemSet":
        return ElemSet(self, self.full)

    def format_mask(self, mask: int) -> str:
        return "{" + " ".join(self.names[i] for i in bits(mask)) + "}"

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Universe) and self.names == other.names)

    def __hash__(self) -> int:
        return hash(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __repr__(self) -> str:
        return f"Universe({' '.join(self.names)})"


class ElemSet:
    """A subset of a universe, stored as a bit mask."""

    __slots__ = ("universe", "mask")

    def __init__(self, universe: Universe, mask: int):
        if mask < 0 or mask >> universe.size:
            raise InputError(f"mask {mask:#b} outside universe of size {universe.size}")
        self.universe = universe
        self.mask = mask

    def _same(self, other: "ElemSet") -> int:
        if not isinstance(other, ElemSet):
            raise TypeError(f"expected ElemSet, got {type(other).__name__}")
        if self.universe != other.universe:
            raise UniverseMismatchError("sets live in different universes")
        return other.mask

    def __or__(self, other: "ElemSet") -> "ElemSet":
        return ElemSet(self.universe, self.mask | self._same(other))

    def __and__(self, other: "ElemSet") -> "ElemSet":
        return ElemSet(self.universe, self.mask & self._same(other))

    def __sub__(self, other: "ElemSet") -> "ElemSet":
        return ElemSet(self.universe, self.mask & ~self._same(other))

    def complement(self) -> "ElemSet":
        return ElemSet(self.universe, self.universe.full & ~self.mask)

    def issubset(self, other: "ElemSet") -> bool:
        return self.mask & ~self._same(other) == 0

    def __le__(self, other: "ElemSet") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "ElemSet") -> bool:
        return self.issubset(other) and self.mask != other.mask

    def __ge__(self, other: "ElemSet") -> bool:
        return other.issubset(self)

    def __gt__(self, other: "ElemSet") -> bool:
        return other < self

    def __contains__(self, name: str) -> bool:
        return bool(self.mask >> self.universe.index(name) & 1)

    def __iter__(self) -> Iterator[str]:
        return (self.universe.names[i] for i in bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElemSet)
            and self.mask == other.mask
            and self.universe == other.universe
        )

    def __hash__(self) -> int:
        return hash((self.universe.names, self.mask))

    def sort_key(self) -> tuple:
        return set_key(self.mask)

    def __str__(self) -> str:
        return self.universe.format_mask(self.mask)

    def __repr__(self) -> str:
        return f"ElemSet{self}"


def transfer(s: ElemSet, universe: Universe) -> ElemSet:
    """Re-express ``s`` in another universe that contains all of its elements."""
    return universe.set(s)

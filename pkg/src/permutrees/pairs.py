"""Pair sets over [n], stored as strictly upper triangular bit matrices.

Row ``i`` is an int whose bit ``j`` is set iff ``(i, j)`` is in the set.
Vertices are 1-indexed, so bit 0 and bits ``<= i`` of row ``i`` are always
clear.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def interval_mask(lo: int, hi: int) -> int:
    """Bits lo..hi inclusive (empty if lo > hi)."""
    if lo > hi:
        return 0
    return ((1 << (hi + 1)) - 1) ^ ((1 << lo) - 1)


def parse_pairs(text: str) -> list[tuple[int, int]]:
    """Parse ``"1-2,3-4"`` into ``[(1, 2), (3, 4)]``; the empty string is ∅."""
    text = text.strip()
    if not text:
        return []
    out = []
    for chunk in text.split(","):
        left, sep, right = chunk.strip().partition("-")
        if not sep:
            raise ValueError(f"malformed pair {chunk.strip()!r}, expected i-j")
        try:
            out.append((int(left), int(right)))
        except ValueError:
            raise ValueError(f"malformed pair {chunk.strip()!r}, expected i-j") from None
    return out


@dataclass(frozen=True)
class InversionSet:
    """A set of pairs ``(i, j)`` with ``1 <= i < j <= n``.

    Also used for bracket sets (decoration ``d^n``) and cubic sets.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows, start=1):
            if row & ~interval_mask(i + 1, self.n):
                raise ValueError(f"row {i} holds pairs outside {i + 1}..{self.n}")

    @classmethod
    def empty(cls, n: int) -> InversionSet:
        return cls(n, (0,) * n)

    @classmethod
    def full(cls, n: int) -> InversionSet:
        return cls(n, tuple(interval_mask(i + 1, n) for i in range(1, n + 1)))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> InversionSet:
        rows = [0] * n
        for i, j in pairs:
            if not 1 <= i < j <= n:
                raise ValueError(f"pair ({i},{j}) out of range for n={n}")
            rows[i - 1] |= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def from_components(cls, components: Iterable[Iterable[int]], n: int | None = None):
        """Build from components ``B_1, B_2, ...``; missing trailing ones are ∅."""
        comps = [list(c) for c in components]
        if n is None:
            n = len(comps) + 1
        return cls.from_pairs(n, ((i, j) for i, c in enumerate(comps, start=1) for j in c))

    def row(self, i: int) -> int:
        return self.rows[i - 1]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        if not 1 <= i < j <= self.n:
            return False
        return bool(self.rows[i - 1] >> j & 1)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.rows, start=1):
            for j in bits(row):
                yield (i, j)

    def __len__(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def pairs(self) -> list[tuple[int, int]]:
        return list(self)

    def component(self, i: int) -> frozenset[int]:
        return frozenset(bits(self.rows[i - 1]))

    def components(self) -> list[frozenset[int]]:
        """Components ``B_1 .. B_{n-1}``; ``B_n`` is always empty and dropped."""
        return [self.component(i) for i in range(1, self.n)]

    def vector(self) -> tuple[int, ...]:
        return tuple(self.rows[i].bit_count() for i in range(self.n - 1))

    def _check(self, other: InversionSet):
        if self.n != other.n:
            raise ValueError(f"mismatched sizes {self.n} and {other.n}")

    def __and__(self, other: InversionSet) -> InversionSet:
        self._check(other)
        return InversionSet(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __or__(self, other: InversionSet) -> InversionSet:
        self._check(other)
        return InversionSet(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: InversionSet) -> bool:
        self._check(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __lt__(self, other: InversionSet) -> bool:
        return self <= other and self != other

    def __ge__(self, other: InversionSet) -> bool:
        return other <= self

    def __gt__(self, other: InversionSet) -> bool:
        return other < self

    def add(self, i: int, j: int) -> InversionSet:
        if not 1 <= i < j <= self.n:
            raise ValueError(f"pair ({i},{j}) out of range for n={self.n}")
        rows = list(self.rows)
        rows[i - 1] |= 1 << j
        return InversionSet(self.n, tuple(rows))

    def complement(self) -> InversionSet:
        full = InversionSet.full(self.n)
        return InversionSet(self.n, tuple(f & ~r for f, r in zip(full.rows, self.rows)))

    @cached_property
    def key(self) -> tuple[bool, ...]:
        """Canonical sort key: the pair matrix read row by row, ``(1,2)`` first."""
        return tuple(
            bool(row >> j & 1)
            for i, row in enumerate(self.rows, start=1)
            for j in range(i + 1, self.n + 1)
        )

    @cached_property
    def mask(self) -> int:
        """All pairs packed into one int (bit order is irrelevant to callers)."""
        out = 0
        for i, row in enumerate(self.rows):
            out |= row << (i * (self.n + 1))
        return out

    def format(self) -> str:
        """``"2-4,3-4"`` style rendering, the inverse of `parse_pairs`."""
        return ",".join(f"{i}-{j}" for i, j in self)

    def __repr__(self) -> str:
        return f"InversionSet(n={self.n}, {{{', '.join(f'({i},{j})' for i, j in self)}}})"


def transitive_closure(pairs: InversionSet) -> InversionSet:
    """Smallest transitive superset, by one sweep from the last row up.

    Rows ``j > i`` are already closed when row ``i`` is processed, so a
    single union over the successors of ``i`` suffices.
    """
    rows = list(pairs.rows)
    for i in range(pairs.n - 1, -1, -1):
        acc = rows[i]
        for j in bits(rows[i]):
            acc |= rows[j - 1]
        rows[i] = acc
    return InversionSet(pairs.n, tuple(rows))

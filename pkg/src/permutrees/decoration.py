"""Decorations: words over {none, down, up, updown} fixing slot counts."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class DecorationError(ValueError):
    """Raised for malformed decoration words."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class Deco(str, Enum):
    NONE = "n"
    DOWN = "d"
    UP = "u"
    UPDOWN = "b"

    @property
    def two_parents(self) -> bool:
        return self in (Deco.UP, Deco.UPDOWN)

    @property
    def two_children(self) -> bool:
        return self in (Deco.DOWN, Deco.UPDOWN)


@dataclass(frozen=True)
class Decoration:
    entries: tuple[Deco, ...]

    def __post_init__(self):
        if not self.entries:
            raise DecorationError("decoration must have at least one letter")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def word(self) -> str:
        return "".join(d.value for d in self.entries)

    def __getitem__(self, i: int) -> Deco:
        # 1-indexed, like vertex labels
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.entries[i - 1]

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return self.word

    @classmethod
    def parse(cls, raw: str) -> Decoration:
        """Parse and normalize `raw`, discarding the normalization flag."""
        return normalize_decoration(raw)[0]

    @classmethod
    def uniform(cls, letter: str | Deco, n: int) -> Decoration:
        return normalize_decoration(Deco(letter).value * n)[0]


def normalize_decoration(raw: str | Decoration) -> tuple[Decoration, bool]:
    """Return the decoration with both endpoints set to NONE.

    The second item reports whether any endpoint had to be overwritten.
    The endpoint letters never change the tree structure, so this is a
    normalization rather than a rejection.

    >>> d, changed = normalize_decoration("ubndd")
    >>> d.word, changed
    ('nbndn', True)
    """
    if isinstance(raw, Decoration):
        letters = list(raw.entries)
    else:
        if not raw:
            raise DecorationError("empty decoration word")
        letters = []
        for pos, ch in enumerate(raw, start=1):
            try:
                letters.append(Deco(ch.lower()))
            except ValueError:
                raise DecorationError(
                    f"invalid letter {ch!r} at position {pos}", position=pos
                ) from None
    changed = False
    for idx in {0, len(letters) - 1}:
        if letters[idx] is not Deco.NONE:
            letters[idx] = Deco.NONE
            changed = True
    return Decoration(tuple(letters)), changed


def interior_decorations(n: int, alphabet: str = "ndub") -> list[Decoration]:
    """All normalized decorations of length `n` with interior letters from
    `alphabet`, in lexicographic order of the alphabet as given."""
    from itertools import product

    if n <= 2:
        return [Decoration((Deco.NONE,) * n)]
    out = []
    for mid in product(alphabet, repeat=n - 2):
        out.append(normalize_decoration("n" + "".join(mid) + "n")[0])
    return out

"""Lattice construction over inversion sets, tree reconstruction and the
exhaustive lattice check."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial
from typing import Any

from .decoration import Decoration
from .order import _covers, join, meet, require_valid
from .pairs import InversionSet, transitive_closure
from .permutree import (
    Permutree,
    extreme_permutree,
    increasing_edges,
    inversion_set,
    rotate,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 10


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Lattice:
    """Enumerated δ-permutrees, identified by inversion set.

    ``nodes`` are in canonical order and a node's id is its position.
    ``covers`` holds ``(source id, target id, i, j)`` where ``(i, j)`` is
    the rotated edge; ``trees[k]`` is the permutree of node ``k``.
    """

    delta: Decoration
    nodes: tuple[InversionSet, ...]
    covers: tuple[tuple[int, int, int, int], ...]
    trees: tuple[Permutree, ...]

    @property
    def n(self) -> int:
        return self.delta.n

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def index(self) -> dict[InversionSet, int]:
        return {E: k for k, E in enumerate(self.nodes)}

    @cached_property
    def up(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.nodes]
        for s, t, _, _ in self.covers:
            out[s].append(t)
        return tuple(tuple(x) for x in out)

    def up_neighbors(self, E: InversionSet) -> list[InversionSet]:
        return [self.nodes[t] for t in self.up[self.index[E]]]

    def tree(self, E: InversionSet) -> Permutree:
        return self.trees[self.index[E]]

    @property
    def bottom(self) -> InversionSet:
        return self.nodes[0]

    @property
    def top(self) -> InversionSet:
        return self.nodes[-1]


def enumerate_lattice(delta: Decoration, max_n: int = DEFAULT_MAX_N) -> Lattice:
    """Breadth-first closure of the cover relation from ∅.

    Each cover found on inversion sets is replayed as a rotation of the
    source tree, which both labels the cover with its edge and yields the
    target's tree.
    """
    n = delta.n
    if n > max_n:
        raise ResourceLimitError(f"n={n} exceeds the enumeration bound {max_n}")
    if factorial(n) > 10**6:
        log.warning("n=%d: up to %d nodes (n!) may be enumerated", n, factorial(n))

    start = extreme_permutree(delta, "min")
    E0 = inversion_set(start)
    trees = {E0: start}
    cover_list = []
    queue = deque([E0])
    while queue:
        E = queue.popleft()
        T = trees[E]
        for (i, j), X in _covers(E, delta):
            if (i, j) not in increasing_edges(T):
                raise RuntimeError(f"cover {E.format()} -> {X.format()} does not come from an edge of {T}")
            T2 = rotate(T, i, j)
            if inversion_set(T2) != X:
                raise RuntimeError(f"rotating {i}->{j} in {T} does not give {X.format()}")
            cover_list.append((E, X, i, j))
            if X not in trees:
                trees[X] = T2
                queue.append(X)

    nodes = sorted(trees, key=lambda E: E.key)
    index = {E: k for k, E in enumerate(nodes)}
    covers = sorted((index[E], index[X], i, j) for E, X, i, j in cover_list)
    return Lattice(delta, tuple(nodes), tuple(covers), tuple(trees[E] for E in nodes))


def tree_from_inversion_set(E: InversionSet, delta: Decoration) -> Permutree:
    """The unique δ-permutree whose inversion set is `E`.

    Climbs from the minimal tree, rotating any upward edge whose closure
    stays inside `E`; at most ``|E|`` rotations are needed.
    """
    require_valid(E, delta)
    T = extreme_permutree(delta, "min")
    B = inversion_set(T)
    while B != E:
        for i, j in increasing_edges(T):
            X = transitive_closure(B.add(i, j))
            if X <= E:
                T, B = rotate(T, i, j), X
                break
        else:
            raise RuntimeError(f"rotation ascent stalled at {B.format() or '∅'} below {E.format()}")
    if inversion_set(T) != E:
        raise RuntimeError(f"ascent reached a tree with inversion set {inversion_set(T).format()}")
    return T


@dataclass
class LatticeReport:
    delta: str
    n: int
    elements: int
    covers: int
    pairs_checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict[str, Any]:
        return {
            "delta": self.delta,
            "n": self.n,
            "elements": self.elements,
            "covers": self.covers,
            "pairs_checked": self.pairs_checked,
            "passed": self.passed,
            "failures": self.failures,
        }


def check_lattice(delta: Decoration, lattice: Lattice | None = None, max_failures: int = 10) -> LatticeReport:
    """Compare the meet formula and the climbing join with poset bounds
    computed by the oracle, for every unordered pair of nodes."""
    from .oracle import BRUTEFORCE_MAX_N, PosetOracle, enumerate_bruteforce

    if lattice is None:
        lattice = enumerate_lattice(delta)
    report = LatticeReport(delta.word, delta.n, len(lattice), len(lattice.covers))
    if delta.n <= BRUTEFORCE_MAX_N:
        family = enumerate_bruteforce(delta)
        if list(lattice.nodes) != family:
            report.failures.append({"check": "family", "expected": len(family), "got": len(lattice)})
            return report
    poset = PosetOracle(lattice.nodes)
    nodes = lattice.nodes
    for a in range(len(nodes)):
        for b in range(a, len(nodes)):
            E1, E2 = nodes[a], nodes[b]
            report.pairs_checked += 1
            glb, lub = poset.glb(E1, E2), poset.lub(E1, E2)
            m = meet(E1, E2, delta)
            j = join(E1, E2, delta, up_neighbors=lattice.up_neighbors)
            if glb is None or m != glb:
                report.failures.append(_mismatch("meet", E1, E2, glb, m))
            if lub is None or j != lub:
                report.failures.append(_mismatch("join", E1, E2, lub, j))
            if len(report.failures) >= max_failures:
                return report
    return report


def _mismatch(what, E1, E2, expected, got):
    return {
        "check": what,
        "left": E1.format(),
        "right": E2.format(),
        "expected": None if expected is None else expected.format(),
        "got": got.format(),
    }

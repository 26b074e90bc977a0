"""Brute-force oracles.

Nothing here uses the cover or enumeration code of `order` / `lattice`:
the families come from filtering every subset of pairs, or from climbing
rotations tree by tree, and the lattice operations come from comparing
down-sets.  `order.meet` is imported only as the thing under test.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb, factorial
from typing import Any

import numpy as np

from .decoration import Deco, Decoration, interior_decorations
from .pairs import InversionSet, bits
from .permutree import (
    Permutree,
    cubic_vector,
    extreme_permutree,
    increasing_edges,
    inversion_set,
    rotate,
    strict_descendants,
    to_binary_sequence,
    vertex_coordinates,
)

BRUTEFORCE_MAX_N = 6


class OracleBoundError(RuntimeError):
    pass


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@dataclass
class OracleReport:
    delta: str
    n: int
    prop: str
    passed: bool
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failing report must carry a counterexample")

    def as_dict(self) -> dict[str, Any]:
        return {
            "delta": self.delta,
            "n": self.n,
            "property": self.prop,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "details": self.details,
        }


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def enumerate_bruteforce(delta: Decoration, max_n: int = BRUTEFORCE_MAX_N) -> list[InversionSet]:
    """Every subset of pairs that passes the four conditions, canonical order.

    All ``2^(n(n-1)/2)`` subsets are tested at once as columns of a boolean
    matrix.  Subset number ``s`` holds pair ``p`` (row-major index) iff bit
    ``m - 1 - p`` of ``s`` is set, so ascending ``s`` is canonical order.
    """
    n = delta.n
    if n > max_n:
        raise OracleBoundError(f"brute force is limited to n <= {max_n}, got {n}")
    pairs = _pair_list(n)
    m = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}
    subsets = np.arange(1 << m, dtype=np.int64)
    member = {p: ((subsets >> (m - 1 - k)) & 1).astype(bool) for p, k in index.items()}
    ok = np.ones(1 << m, dtype=bool)
    for i, j, k in combinations(range(1, n + 1), 3):
        a, b, c = member[(i, j)], member[(j, k)], member[(i, k)]
        ok &= ~(a & b & ~c)
        ok &= ~(~a & ~b & c)
        if delta[j] in (Deco.DOWN, Deco.UPDOWN):
            ok &= ~(~a & b & c)
        if delta[j] in (Deco.UP, Deco.UPDOWN):
            ok &= ~(a & ~b & c)
    out = []
    for s in np.flatnonzero(ok):
        s = int(s)
        out.append(InversionSet.from_pairs(n, (pairs[k] for k in range(m) if s >> (m - 1 - k) & 1)))
    return out


def poset_glb_lub(nodes, E1: InversionSet, E2: InversionSet):
    """Greatest common lower bound and least common upper bound under
    inclusion, each None when it does not exist."""
    lower = [X for X in nodes if X <= E1 and X <= E2]
    upper = [X for X in nodes if E1 <= X and E2 <= X]
    glb = [X for X in lower if all(Y <= X for Y in lower)]
    lub = [X for X in upper if all(X <= Y for Y in upper)]
    return (glb[0] if glb else None, lub[0] if lub else None)


class PosetOracle:
    """Inclusion order on a fixed family, with down-sets as node bitsets.

    The meet of ``a`` and ``b`` exists iff some node's down-set equals
    ``down[a] & down[b]``; joins likewise with up-sets.
    """

    def __init__(self, nodes):
        self.nodes = list(nodes)
        self.index = {X: k for k, X in enumerate(self.nodes)}
        masks = [X.mask for X in self.nodes]
        N = len(masks)
        down = [0] * N
        up = [0] * N
        for a in range(N):
            ma = masks[a]
            for b in range(N):
                if ma & ~masks[b] == 0:  # a ⊆ b
                    down[b] |= 1 << a
                    up[a] |= 1 << b
        self.down = down
        self.up = up
        self._by_down = {d: k for k, d in enumerate(down)}
        self._by_up = {u: k for k, u in enumerate(up)}

    def glb(self, E1: InversionSet, E2: InversionSet) -> InversionSet | None:
        k = self._by_down.get(self.down[self.index[E1]] & self.down[self.index[E2]])
        return None if k is None else self.nodes[k]

    def lub(self, E1: InversionSet, E2: InversionSet) -> InversionSet | None:
        k = self._by_up.get(self.up[self.index[E1]] & self.up[self.index[E2]])
        return None if k is None else self.nodes[k]

    def hasse(self) -> set[tuple[InversionSet, InversionSet]]:
        out = set()
        for a in range(len(self.nodes)):
            strict = self.up[a] & ~(1 << a)
            reach = 0
            for b in bits(strict):
                reach |= self.up[b] & ~(1 << b)
            for b in bits(strict & ~reach):
                out.add((self.nodes[a], self.nodes[b]))
        return out


def tree_family(delta: Decoration) -> tuple[dict[InversionSet, Permutree], int]:
    """Climb every upward rotation from the minimal tree.

    Returns the trees keyed by inversion set and the number of distinct
    rotation edges met on the way.
    """
    start = extreme_permutree(delta, "min")
    trees = {inversion_set(start): start}
    queue = deque([start])
    edges = set()
    while queue:
        T = queue.popleft()
        E = inversion_set(T)
        for i, j in increasing_edges(T):
            T2 = rotate(T, i, j)
            E2 = inversion_set(T2)
            edges.add((E, E2))
            if E2 not in trees:
                trees[E2] = T2
                queue.append(T2)
    return trees, len(edges)


class Family(str, Enum):
    PERMUTATION = "permutation"
    TAMARI = "tamari"
    BOOLEAN = "boolean"
    CAMBRIAN = "cambrian"


def _fail(delta, n, prop, what, **payload):
    return OracleReport(delta, n, prop, False, {"check": what, **payload})


def _leaf_product(tree: Permutree) -> tuple[int, ...]:
    out = []
    for i in tree.vertices:
        desc = strict_descendants(tree, i)
        left = sum(1 for v in desc if v < i)
        right = len(desc) - left
        out.append((left + 1) * (right + 1))
    return tuple(out)


def specialization_check(family: Family | str, n: int) -> OracleReport:
    """Check a classical specialization (permutations, binary trees, binary
    words, Cambrian trees) against its known counts and vector identities."""
    from .order import componentwise_meet, is_bracket_set, meet

    family = Family(family)
    if not 1 <= n <= 7:
        raise OracleBoundError(f"specialization checks run for 1 <= n <= 7, got {n}")
    prop = f"specialization:{family.value}"

    if family is Family.CAMBRIAN:
        per = {}
        for delta in interior_decorations(n, "ud"):
            trees, _ = tree_family(delta)
            per[delta.word] = len(trees)
            if len(trees) != catalan(n):
                return _fail("cambrian", n, prop, "count", delta=delta.word, expected=catalan(n), got=len(trees))
        return OracleReport("cambrian", n, prop, True, details={"counts": per, "expected": catalan(n)})

    letter = {Family.PERMUTATION: "n", Family.TAMARI: "d", Family.BOOLEAN: "b"}[family]
    delta = Decoration.uniform(letter, n)
    trees, n_edges = tree_family(delta)
    sets = sorted(trees, key=lambda E: E.key)
    details: dict[str, Any] = {"elements": len(sets), "covers": n_edges}

    if family is Family.PERMUTATION:
        if len(sets) != factorial(n):
            return _fail(delta.word, n, prop, "count", expected=factorial(n), got=len(sets))
        expected_edges = factorial(n) * (n - 1) // 2
        if n_edges != expected_edges:
            return _fail(delta.word, n, prop, "covers", expected=expected_edges, got=n_edges)
        for E in sets:
            b, c = E.vector(), cubic_vector(trees[E])
            if b != c:
                return _fail(delta.word, n, prop, "c=b", node=E.format(), b=list(b), c=list(c))

    elif family is Family.TAMARI:
        if len(sets) != catalan(n):
            return _fail(delta.word, n, prop, "count", expected=catalan(n), got=len(sets))
        for E in sets:
            T = trees[E]
            if not is_bracket_set(E):
                return _fail(delta.word, n, prop, "bracket characterization", node=E.format())
            b, c = E.vector(), cubic_vector(T)
            if b != c:
                return _fail(delta.word, n, prop, "c=b", node=E.format(), b=list(b), c=list(c))
            a, lr = vertex_coordinates(T), _leaf_product(T)
            if a != lr:
                return _fail(delta.word, n, prop, "leaf product", node=E.format(), a=list(a), expected=list(lr))
        for E1 in sets:
            for E2 in sets:
                got, want = meet(E1, E2, delta), componentwise_meet(E1, E2)
                if got != want:
                    return _fail(
                        delta.word, n, prop, "meet = componentwise",
                        left=E1.format(), right=E2.format(), expected=want.format(), got=got.format(),
                    )
        details["pairs"] = len(sets) ** 2

    elif family is Family.BOOLEAN:
        if len(sets) != 2 ** (n - 1):
            return _fail(delta.word, n, prop, "count", expected=2 ** (n - 1), got=len(sets))
        words = {E: to_binary_sequence(trees[E]) for E in sets}
        if len(set(words.values())) != len(sets):
            return _fail(delta.word, n, prop, "binary words injective", words=sorted(words.values()))
        ones = {E: frozenset(k for k, s in enumerate(w, start=1) if s == "1") for E, w in words.items()}
        for E1 in sets:
            for E2 in sets:
                if (E1 <= E2) != (ones[E1] <= ones[E2]):
                    return _fail(
                        delta.word, n, prop, "order isomorphism",
                        left=E1.format(), right=E2.format(), words=[words[E1], words[E2]],
                    )
        details["words"] = sorted(words.values())

    return OracleReport(delta.word, n, prop, True, details=details)

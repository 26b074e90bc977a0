"""Permutrees as explicit slotted trees.

Every vertex ``i`` owns one or two parent slots and one or two child slots,
as dictated by its decoration letter.  A slot holds the label of the
adjacent vertex on that side, or ``None`` for a blossom.  An edge ``i -> j``
means that ``i`` sits in a child slot of ``j`` (``i`` is a child of ``j``).

Slot names follow the usual convention: ``A`` / ``D`` for a single
ancestor / descendant slot, ``LA``, ``RA``, ``LD``, ``RD`` for split ones.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Optional

from .decoration import Deco, Decoration
from .pairs import InversionSet

Slot = Optional[int]

PARENT_SLOTS = {1: ("A",), 2: ("LA", "RA")}
CHILD_SLOTS = {1: ("D",), 2: ("LD", "RD")}


class RotationError(ValueError):
    pass


class Extreme(str, Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class EdgeCut:
    """Ordered partition ``(I || J)`` cut out by the edge ``i -> j``.

    ``I`` is the side of ``i`` (the child end), ``J`` the side of ``j``.
    """

    I: frozenset[int]
    J: frozenset[int]
    edge: tuple[int, int]

    @property
    def parts(self) -> tuple[frozenset[int], frozenset[int]]:
        return (self.I, self.J)

    def __str__(self) -> str:
        return f"({{{','.join(map(str, sorted(self.I)))}}} || {{{','.join(map(str, sorted(self.J)))}}})"


@dataclass(frozen=True)
class CubicData:
    n: int
    components: tuple[frozenset[int], ...]  # C_1 .. C_{n-1}

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def as_set(self) -> InversionSet:
        return InversionSet.from_components(self.components, self.n)


@dataclass(frozen=True)
class Permutree:
    """A decorated tree in slot form.

    ``parents[i - 1]`` and ``children[i - 1]`` are the slot tuples of vertex
    ``i``, ordered (left, right) when there are two of them.  Construction
    checks nothing beyond the vertex count; see `validate_permutree`.
    """

    delta: Decoration
    parents: tuple[tuple[Slot, ...], ...]
    children: tuple[tuple[Slot, ...], ...]

    def __post_init__(self):
        if len(self.parents) != self.delta.n or len(self.children) != self.delta.n:
            raise ValueError("slot tables must have one entry per vertex")

    @property
    def n(self) -> int:
        return self.delta.n

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def slot_names(self, i: int) -> tuple[str, ...]:
        d = self.delta[i]
        return PARENT_SLOTS[2 if d.two_parents else 1] + CHILD_SLOTS[2 if d.two_children else 1]

    def slot(self, i: int, name: str) -> Slot:
        d = self.delta[i]
        if name in PARENT_SLOTS[2 if d.two_parents else 1]:
            return self.parents[i - 1][PARENT_SLOTS[2 if d.two_parents else 1].index(name)]
        if name in CHILD_SLOTS[2 if d.two_children else 1]:
            return self.children[i - 1][CHILD_SLOTS[2 if d.two_children else 1].index(name)]
        raise KeyError(f"slot {name} is not defined for vertex {i} (decoration {d.value})")

    def parents_of(self, i: int) -> list[int]:
        return [p for p in self.parents[i - 1] if p is not None]

    def children_of(self, i: int) -> list[int]:
        return [c for c in self.children[i - 1] if c is not None]

    def neighbors(self, i: int) -> list[int]:
        return self.parents_of(i) + self.children_of(i)

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(child, parent)``, sorted."""
        return sorted((c, p) for p in self.vertices for c in self.children_of(p))

    def has_edge(self, i: int, j: int) -> bool:
        """Whether ``i -> j`` (``i`` a child of ``j``) is an edge."""
        return 1 <= j <= self.n and i in self.children[j - 1]

    def component(self, start: int, avoid: int) -> frozenset[int]:
        """Vertices reachable from `start` without passing through `avoid`."""
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w != avoid and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def __str__(self) -> str:
        edges = " ".join(f"{c}->{p}" for c, p in self.edges())
        return f"Permutree({self.delta.word}: {edges})"


def _freeze(rows):
    return tuple(tuple(r) for r in rows)


def extreme_permutree(delta: Decoration, which: Extreme | str = Extreme.MIN) -> Permutree:
    """The bottom chain ``1 -> 2 -> ... -> n`` or the top chain ``n -> ... -> 1``."""
    which = Extreme(which)
    n = delta.n
    parents = [[None] * (2 if delta[i].two_parents else 1) for i in range(1, n + 1)]
    children = [[None] * (2 if delta[i].two_children else 1) for i in range(1, n + 1)]
    for i in range(1, n):
        lo, hi = i - 1, i  # 0-based positions of vertices i and i+1
        if which is Extreme.MIN:
            # i is the (left or sole) child of i+1
            children[hi][0] = i
            parents[lo][-1] = i + 1
        else:
            # i+1 is the (right or sole) child of i
            children[lo][-1] = i + 1
            parents[hi][0] = i
    return Permutree(delta, _freeze(parents), _freeze(children))


def validate_permutree(tree: Permutree) -> list[str]:
    """Return a list of violated invariants; empty means `tree` is valid."""
    problems: list[str] = []
    n = tree.n
    for i in tree.vertices:
        d = tree.delta[i]
        want_p, want_c = (2 if d.two_parents else 1), (2 if d.two_children else 1)
        if len(tree.parents[i - 1]) != want_p:
            problems.append(f"vertex {i}: {len(tree.parents[i - 1])} parent slots, decoration {d.value} needs {want_p}")
        if len(tree.children[i - 1]) != want_c:
            problems.append(f"vertex {i}: {len(tree.children[i - 1])} child slots, decoration {d.value} needs {want_c}")
        for w in tree.parents[i - 1] + tree.children[i - 1]:
            if w is not None and not (1 <= w <= n) or w == i:
                problems.append(f"vertex {i}: slot refers to invalid vertex {w}")
    if problems:
        return problems

    for i in tree.vertices:
        for p in tree.parents_of(i):
            if i not in tree.children[p - 1]:
                problems.append(f"reciprocity: {p} is a parent of {i} but {i} is not a child of {p}")
        for c in tree.children_of(i):
            if i not in tree.parents[c - 1]:
                problems.append(f"reciprocity: {c} is a child of {i} but {i} is not a parent of {c}")
        nbrs = tree.neighbors(i)
        if len(nbrs) != len(set(nbrs)):
            problems.append(f"vertex {i}: repeated neighbour")
    if problems:
        return problems

    n_edges = len(tree.edges())
    reached = tree.component(1, avoid=0)
    if n_edges != n - 1 or len(reached) != n:
        problems.append(f"disconnected / edge count: {n_edges} edges, {len(reached)} of {n} vertices reachable")
        return problems

    for i in tree.vertices:
        for name in tree.slot_names(i):
            if name not in ("LA", "RA", "LD", "RD"):
                continue
            w = tree.slot(i, name)
            if w is None:
                continue
            side = tree.component(w, avoid=i)
            bad = [v for v in side if (v > i if name[0] == "L" else v < i)]
            if bad:
                problems.append(f"label condition at {name}_{i}: vertex {min(bad)} on the wrong side")
    return problems


def strict_descendants(tree: Permutree, i: int) -> frozenset[int]:
    """All ``j`` with a directed path ``j -> ... -> i``."""
    seen: set[int] = set()
    stack = tree.children_of(i)
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(tree.children_of(v))
    return frozenset(seen)


def subtree(tree: Permutree, i: int, slot: str) -> frozenset[int]:
    """The component of ``tree - v_i`` hanging off `slot` of vertex `i`."""
    w = tree.slot(i, slot)
    if w is None:
        return frozenset()
    return tree.component(w, avoid=i)


def edge_cut(tree: Permutree, i: int, j: int) -> EdgeCut:
    if not tree.has_edge(i, j):
        raise ValueError(f"{i}->{j} is not an edge of {tree}")
    side = tree.component(i, avoid=j)
    return EdgeCut(side, frozenset(tree.vertices) - side, (i, j))


def edge_cuts(tree: Permutree) -> list[EdgeCut]:
    return [edge_cut(tree, c, p) for c, p in tree.edges()]


def cut_multiset(tree: Permutree) -> Counter:
    return Counter((c.I, c.J) for c in edge_cuts(tree))


def _rotation_slots(tree: Permutree, lo: int, hi: int) -> tuple[int, int, int, int]:
    """Slot positions touched by rotating the edge between ``lo < hi``.

    Returns (parent slot of lo facing hi, child slot of lo facing hi,
    parent slot of hi facing lo, child slot of hi facing lo).  The same
    positions serve both directions of the rotation.
    """
    d_lo, d_hi = tree.delta[lo], tree.delta[hi]
    return (
        1 if d_lo.two_parents else 0,   # RA_lo or A_lo
        1 if d_lo.two_children else 0,  # RD_lo or D_lo
        0,                              # LA_hi or A_hi
        0,                              # LD_hi or D_hi
    )


def _relink(rows, vertex, old, new):
    row = rows[vertex - 1]
    row[row.index(old)] = new


def rotate(tree: Permutree, i: int, j: int) -> Permutree:
    """Rotate the edge ``i -> j`` (``i < j``) into ``j -> i``.

    The subtree below `i` on its right (or only) child side moves under `j`;
    the subtree above `j` on its left (or only) parent side moves above `i`.
    Everything else keeps its attachment.
    """
    if not i < j:
        raise RotationError(f"rotation needs i < j, got ({i},{j})")
    if not tree.has_edge(i, j):
        if tree.has_edge(j, i):
            raise RotationError(f"edge between {i} and {j} is oriented {j}->{i}; nothing to rotate up")
        raise RotationError(f"{i}->{j} is not an edge")
    pi, ci, pj, cj = _rotation_slots(tree, i, j)
    parents = [list(r) for r in tree.parents]
    children = [list(r) for r in tree.children]
    if parents[i - 1][pi] != j or children[j - 1][cj] != i:
        raise RotationError(f"edge {i}->{j} sits in unexpected slots")
    down = children[i - 1][ci]
    up = parents[j - 1][pj]
    parents[i - 1][pi] = up
    children[i - 1][ci] = j
    parents[j - 1][pj] = i
    children[j - 1][cj] = down
    if up is not None:
        _relink(children, up, j, i)
    if down is not None:
        _relink(parents, down, i, j)
    return Permutree(tree.delta, _freeze(parents), _freeze(children))


def rotate_back(tree: Permutree, i: int, j: int) -> Permutree:
    """Inverse of `rotate`: turn the edge ``j -> i`` (``i < j``) back into ``i -> j``."""
    if not i < j:
        raise RotationError(f"rotation needs i < j, got ({i},{j})")
    if not tree.has_edge(j, i):
        raise RotationError(f"{j}->{i} is not an edge")
    pi, ci, pj, cj = _rotation_slots(tree, i, j)
    parents = [list(r) for r in tree.parents]
    children = [list(r) for r in tree.children]
    if children[i - 1][ci] != j or parents[j - 1][pj] != i:
        raise RotationError(f"edge {j}->{i} sits in unexpected slots")
    up = parents[i - 1][pi]
    down = children[j - 1][cj]
    parents[j - 1][pj] = up
    children[j - 1][cj] = i
    parents[i - 1][pi] = j
    children[i - 1][ci] = down
    if up is not None:
        _relink(children, up, i, j)
    if down is not None:
        _relink(parents, down, j, i)
    return Permutree(tree.delta, _freeze(parents), _freeze(children))


def rotation_contract(tree: Permutree, i: int, j: int) -> list[str]:
    """Check one upward rotation against its postconditions.

    The rotated tree must be a valid permutree, its inversion set must be
    ``tc(B(T) + (i, j))``, every other edge must keep its cut, the cut of
    ``i -> j`` must be replaced by that of ``j -> i``, and `rotate_back`
    must undo the move.  Returns the list of violations.
    """
    from .pairs import transitive_closure

    T2 = rotate(tree, i, j)
    problems = [f"invalid tree: {p}" for p in validate_permutree(T2)]
    if problems:
        return problems
    expected = transitive_closure(inversion_set(tree).add(i, j))
    got = inversion_set(T2)
    if got != expected:
        problems.append(f"inversion set {got.format()} != tc(B + ({i},{j})) = {expected.format()}")
    before, after = cut_multiset(tree), cut_multiset(T2)
    old, new = edge_cut(tree, i, j), edge_cut(T2, j, i)
    if old.parts == new.parts:
        problems.append(f"cut of {i}-{j} unchanged: {old}")
    before[old.parts] -= 1
    after[new.parts] -= 1
    if +before != +after:
        problems.append(f"other cuts changed: {sorted(map(str, (+before - after).elements()))}")
    if rotate_back(T2, i, j) != tree:
        problems.append(f"rotate_back({i},{j}) does not restore the tree")
    return problems


def increasing_edges(tree: Permutree) -> list[tuple[int, int]]:
    """Edges ``i -> j`` with ``i < j``: the rotations available upward."""
    return [(c, p) for c, p in tree.edges() if c < p]


def inversion_set(tree: Permutree) -> InversionSet:
    n = tree.n
    rows = []
    for i in tree.vertices:
        row = 0
        for j in strict_descendants(tree, i):
            if j > i:
                row |= 1 << j
        rows.append(row)
    return InversionSet(n, tuple(rows))


def inversion_vector(tree: Permutree) -> tuple[int, ...]:
    return inversion_set(tree).vector()


def cubic_data(tree: Permutree) -> CubicData:
    comps = []
    for i in range(1, tree.n):
        if tree.delta[i].two_children:
            comps.append(subtree(tree, i, "RD"))
        else:
            comps.append(frozenset(j for j in subtree(tree, i, "D") if j > i))
    return CubicData(tree.n, tuple(comps))


def cubic_vector(tree: Permutree) -> tuple[int, ...]:
    return cubic_data(tree).vector


def vertex_coordinates(tree: Permutree) -> tuple[int, ...]:
    """Integer vertex of the permutreehedron attached to `tree`.

    ``d`` counts every vertex of the child-side subtrees of ``i`` (not only
    the order descendants); with the order-descendant count the points leave
    the hyperplane as soon as an ``up`` vertex has two non-empty parents.
    """
    coords = []
    for i in tree.vertices:
        d = tree.delta[i]
        if d.two_children:
            left, right = len(subtree(tree, i, "LD")), len(subtree(tree, i, "RD"))
            a = 1 + left + right + left * right
        else:
            a = 1 + len(subtree(tree, i, "D"))
        if d.two_parents:
            a -= len(subtree(tree, i, "LA")) * len(subtree(tree, i, "RA"))
        coords.append(a)
    return tuple(coords)


def hyperplane_value(n: int) -> int:
    return comb(n + 1, 2)


def to_binary_sequence(tree: Permutree) -> str:
    """``s_i = 0`` when ``v_i`` is a child of ``v_{i+1}``, ``1`` otherwise.

    Only meaningful for decorations that are ``updown`` on every interior
    position.
    """
    interior = tree.delta.entries[1:-1]
    if any(d is not Deco.UPDOWN for d in interior):
        raise ValueError(f"binary sequences need interior letters 'b', got {tree.delta.word}")
    out = []
    for i in range(1, tree.n):
        if tree.has_edge(i, i + 1):
            out.append("0")
        elif tree.has_edge(i + 1, i):
            out.append("1")
        else:
            raise ValueError(f"vertices {i} and {i + 1} are not adjacent in {tree}")
    return "".join(out)

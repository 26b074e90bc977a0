"""Permutreehedron data and the cubical realization in the stretched cube.

Everything is exact integer arithmetic.  No convex hulls are computed;
the checks work directly with vertex coordinates, the hyperplane, the
half-space family and the cells attached to edge cuts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Any

from .decoration import Decoration
from .lattice import Lattice, enumerate_lattice
from .pairs import InversionSet
from .permutree import cubic_vector, edge_cuts, hyperplane_value, vertex_coordinates

Cut = tuple[frozenset[int], frozenset[int]]


class GeometryError(RuntimeError):
    pass


def _subset_key(s: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return (len(s), tuple(sorted(s)))


@dataclass(frozen=True)
class PolytopeRealization:
    n: int
    delta: Decoration
    points: tuple[tuple[int, ...], ...]          # indexed by node id
    node_cuts: tuple[tuple[Cut, ...], ...]       # edge cuts of each node's tree
    facets: tuple[frozenset[int], ...]           # the family of cut sides I

    @property
    def hyperplane(self) -> int:
        return hyperplane_value(self.n)

    def rhs(self, I: frozenset[int]) -> int:
        return comb(len(I) + 1, 2)


@dataclass(frozen=True)
class Cell:
    cut: Cut
    under: int
    over: int
    members: tuple[int, ...]
    axis: int       # 1-indexed coordinate fixed on the cell
    value: int


@dataclass(frozen=True)
class CubicalRealization:
    n: int
    delta: Decoration
    vertices: tuple[tuple[int, ...], ...]        # cubic vector of each node
    edges: tuple[tuple[int, int, int | None], ...]  # (source, target, axis)
    cells: tuple[Cell, ...]

    def box(self) -> tuple[int, ...]:
        """Upper bounds of the stretched cube: ``(n-1, n-2, ..., 1)``."""
        return tuple(self.n - i for i in range(1, self.n))


@dataclass
class GeometryReport:
    delta: str
    n: int
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and not self.failures

    def record(self, name: str, ok: bool, **payload):
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok and len(self.failures) < 20:
            self.failures.append({"check": name, **payload})

    def as_dict(self) -> dict[str, Any]:
        return {
            "delta": self.delta,
            "n": self.n,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "details": self.details,
        }


def _lattice(delta_or_lattice) -> Lattice:
    if isinstance(delta_or_lattice, Lattice):
        return delta_or_lattice
    return enumerate_lattice(delta_or_lattice)


def build_polytope(delta_or_lattice) -> PolytopeRealization:
    L = _lattice(delta_or_lattice)
    points = tuple(vertex_coordinates(T) for T in L.trees)
    node_cuts = tuple(tuple((c.I, c.J) for c in edge_cuts(T)) for T in L.trees)
    facets = sorted({I for cuts in node_cuts for I, _ in cuts}, key=_subset_key)
    return PolytopeRealization(L.n, L.delta, points, node_cuts, tuple(facets))


def verify_polytope(P: PolytopeRealization) -> GeometryReport:
    """Hyperplane membership, every half-space at every point, and
    tightness of each tree's point on the tree's own cuts."""
    report = GeometryReport(P.delta.word, P.n)
    strict_elsewhere = True
    for k, a in enumerate(P.points):
        report.record("hyperplane", sum(a) == P.hyperplane, node=k, point=list(a))
        own = {I for I, _ in P.node_cuts[k]}
        for I in P.facets:
            lhs = sum(a[i - 1] for i in I)
            report.record("half-spaces", lhs >= P.rhs(I), node=k, I=sorted(I), lhs=lhs, rhs=P.rhs(I))
            if I in own:
                report.record("tight on own cuts", lhs == P.rhs(I), node=k, I=sorted(I), lhs=lhs, rhs=P.rhs(I))
            elif lhs == P.rhs(I):
                strict_elsewhere = False
    report.details.update(
        points=len(P.points),
        facets=len(P.facets),
        tight_only_on_own_cuts=strict_elsewhere,
    )
    return report


def build_cubical(delta_or_lattice) -> CubicalRealization:
    L = _lattice(delta_or_lattice)
    n = L.n
    vertices = tuple(cubic_vector(T) for T in L.trees)
    edges = []
    for s, t, _, _ in L.covers:
        diff = [k for k in range(n - 1) if vertices[s][k] != vertices[t][k]]
        edges.append((s, t, diff[0] + 1 if len(diff) == 1 else None))

    holders: dict[Cut, list[int]] = {}
    for k, T in enumerate(L.trees):
        for c in edge_cuts(T):
            holders.setdefault((c.I, c.J), []).append(k)

    cells = []
    for cut in sorted(holders, key=lambda c: _subset_key(c[0])):
        ks = holders[cut]
        lows = [a for a in ks if all(L.nodes[a] <= L.nodes[b] for b in ks)]
        highs = [a for a in ks if all(L.nodes[b] <= L.nodes[a] for b in ks)]
        if len(lows) != 1 or len(highs) != 1:
            raise GeometryError(
                f"cut {sorted(cut[0])} || {sorted(cut[1])} has no unique minimal/maximal tree in {L.delta.word}"
            )
        under, over = lows[0], highs[0]
        lo, hi = L.nodes[under], L.nodes[over]
        members = tuple(k for k, E in enumerate(L.nodes) if lo <= E <= hi)
        I, J = cut
        if n in J:
            axis, value = max(I), 0
        else:
            axis, value = max(J), n - max(J)
        cells.append(Cell(cut, under, over, members, axis, value))
    return CubicalRealization(n, L.delta, vertices, tuple(edges), tuple(cells))


def _rank(rows: list[tuple[int, ...]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def corners(n: int) -> list[tuple[int, ...]]:
    """Vertices of the stretched cube ``[0,n-1] x ... x [0,1]``, ascending."""
    return [tuple(r) for r in product(*[(0, n - i) for i in range(1, n)])]


def check_cube(
    C: CubicalRealization,
    P: PolytopeRealization | None = None,
    lattice: Lattice | None = None,
) -> GeometryReport:
    report = GeometryReport(C.delta.word, C.n)
    n, V = C.n, C.vertices

    # edges: one coordinate changes, and it grows towards the cover target
    for s, t, axis in C.edges:
        ok = axis is not None and V[t][axis - 1] > V[s][axis - 1]
        report.record("axis-parallel edges", ok, source=s, target=t, c_source=list(V[s]), c_target=list(V[t]))
        report.record("lex-increasing covers", V[s] < V[t], source=s, target=t)

    report.record("injective", len(set(V)) == len(V), duplicates=len(V) - len(set(V)))

    box = C.box()
    for k, v in enumerate(V):
        report.record("inside cube", all(0 <= x <= b for x, b in zip(v, box)), node=k, c=list(v))

    attained = {}
    for k, v in enumerate(V):
        attained.setdefault(v, []).append(k)
    extremal = 0
    for r in corners(n):
        hits = attained.get(r, [])
        report.record("corners attained once", len(hits) == 1, corner=list(r), preimages=hits)
        extremal += len(hits) == 1
    report.details["extremal"] = extremal
    report.details["corners"] = 2 ** (n - 1)

    keys = {(c.under, c.over) for c in C.cells}
    report.record("cells distinct", len(keys) == len(C.cells), cells=len(C.cells), distinct=len(keys))
    if P is not None:
        report.record("cells = facets", len(C.cells) == len(P.facets), cells=len(C.cells), facets=len(P.facets))
    report.details["cells"] = len(C.cells)
    for cell in C.cells:
        for k in cell.members:
            ok = V[k][cell.axis - 1] == cell.value
            report.record("cells in hyperplanes", ok, cut=sorted(cell.cut[0]), node=k, axis=cell.axis, value=cell.value)
        if n >= 3 and len(cell.members) > 1:
            base = V[cell.members[0]]
            diffs = [tuple(x - y for x, y in zip(V[k], base)) for k in cell.members[1:]]
            report.record("cells have full dimension", _rank(diffs) == n - 2, cut=sorted(cell.cut[0]))

    if lattice is not None:
        # every strict comparison, not only covers
        for a, Ea in enumerate(lattice.nodes):
            for b, Eb in enumerate(lattice.nodes):
                if Ea < Eb:
                    report.record("order is lex-increasing", V[a] < V[b], lower=a, upper=b)
    return report


def extremal_permutree(delta_or_lattice, corner: tuple[int, ...]) -> InversionSet:
    """The unique node whose cubic vector is `corner`."""
    L = _lattice(delta_or_lattice)
    n = L.n
    corner = tuple(corner)
    if len(corner) != n - 1 or any(r not in (0, n - i) for i, r in enumerate(corner, start=1)):
        raise ValueError(f"{list(corner)} is not a corner of the stretched cube for n={n}")
    hits = [E for E, T in zip(L.nodes, L.trees) if cubic_vector(T) == corner]
    if len(hits) != 1:
        raise GeometryError(f"corner {list(corner)} has {len(hits)} preimages in {L.delta.word}")
    return hits[0]

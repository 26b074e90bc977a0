"""Serialization: lattice JSON, DOT, vector CSV, geometry JSON and OFF."""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .decoration import normalize_decoration
from .geometry import CubicalRealization, PolytopeRealization, corners, extremal_permutree
from .lattice import Lattice, tree_from_inversion_set
from .pairs import InversionSet
from .permutree import cubic_vector, vertex_coordinates


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def lattice_to_json(L: Lattice, normalized: bool = False) -> dict[str, Any]:
    nodes = []
    for k, (E, T) in enumerate(zip(L.nodes, L.trees)):
        nodes.append({
            "id": k,
            "inv": [[i, j] for i, j in E],
            "b": list(E.vector()),
            "c": list(cubic_vector(T)),
            "a": list(vertex_coordinates(T)),
        })
    return {
        "delta": L.delta.word,
        "n": L.n,
        "normalized": normalized,
        "nodes": nodes,
        "covers": [list(c) for c in L.covers],
    }


def lattice_from_json(data: dict[str, Any]) -> tuple[Lattice, bool]:
    """Rebuild a lattice (trees included) from `lattice_to_json` output."""
    delta, _ = normalize_decoration(data["delta"])
    n = data["n"]
    if delta.n != n:
        raise ValueError(f"decoration {data['delta']!r} does not have length n={n}")
    ordered = sorted(data["nodes"], key=lambda node: node["id"])
    if [node["id"] for node in ordered] != list(range(len(ordered))):
        raise ValueError("node ids must be 0..N-1")
    nodes = tuple(InversionSet.from_pairs(n, map(tuple, node["inv"])) for node in ordered)
    if list(nodes) != sorted(nodes, key=lambda E: E.key):
        raise ValueError("nodes are not in canonical order")
    trees = tuple(tree_from_inversion_set(E, delta) for E in nodes)
    covers = tuple(sorted(tuple(c) for c in data["covers"]))
    return Lattice(delta, nodes, covers, trees), bool(data.get("normalized", False))


def lattice_to_dot(L: Lattice) -> str:
    lines = [f'digraph "{L.delta.word}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for k, E in enumerate(L.nodes):
        label = "(" + ",".join(map(str, E.vector())) + ")"
        lines.append(f'  n{k} [label="{label}"];')
    for s, t, i, j in L.covers:
        lines.append(f'  n{s} -> n{t} [label="{i}-{j}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def vectors_csv(L: Lattice) -> str:
    n = L.n
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        ["id"]
        + [f"b{i}" for i in range(1, n)]
        + [f"c{i}" for i in range(1, n)]
        + [f"a{i}" for i in range(1, n + 1)]
    )
    for k, (E, T) in enumerate(zip(L.nodes, L.trees)):
        w.writerow([k, *E.vector(), *cubic_vector(T), *vertex_coordinates(T)])
    return buf.getvalue()


def geometry_to_json(P: PolytopeRealization, C: CubicalRealization, normalized: bool = False) -> dict[str, Any]:
    return {
        "delta": P.delta.word,
        "n": P.n,
        "normalized": normalized,
        "polytope": {
            "hyperplane": P.hyperplane,
            "points": [list(p) for p in P.points],
            "inequalities": [{"I": sorted(I), "rhs": P.rhs(I)} for I in P.facets],
        },
        "cubical": {
            "box": list(C.box()),
            "vertices": [list(v) for v in C.vertices],
            "edges": [[s, t, axis] for s, t, axis in C.edges],
            "cells": [
                {
                    "I": sorted(c.cut[0]),
                    "J": sorted(c.cut[1]),
                    "under": c.under,
                    "over": c.over,
                    "members": list(c.members),
                    "axis": c.axis,
                    "value": c.value,
                }
                for c in C.cells
            ],
        },
    }


def _cycle(members: list[int], edges: list[tuple[int, int]]) -> list[int]:
    """Order `members` along the cycle formed by `edges` among them."""
    inside = set(members)
    adj: dict[int, list[int]] = {m: [] for m in members}
    for s, t in edges:
        if s in inside and t in inside:
            adj[s].append(t)
            adj[t].append(s)
    if any(len(v) != 2 for v in adj.values()):
        raise ValueError(f"vertices {sorted(members)} do not form a polygon")
    start = min(members)
    order = [start]
    prev, cur = None, start
    # walk towards the smaller neighbour first so the orientation is fixed
    nxt = min(adj[start])
    while nxt != start:
        order.append(nxt)
        prev, cur = cur, nxt
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
    if len(order) != len(members):
        raise ValueError(f"vertices {sorted(members)} do not form a single polygon")
    return order


def cubical_to_off(C: CubicalRealization) -> str:
    """OFF mesh of the cubical realization (dimension at most 3).

    In dimension 3 the faces are the cells, in dimension 2 the single face
    is the whole polygon, below that only vertices are written.
    """
    dim = C.n - 1
    if dim > 3:
        raise ValueError(f"OFF export needs n - 1 <= 3, got n = {C.n}")
    edges = [(s, t) for s, t, _ in C.edges]
    if dim == 3:
        faces = [_cycle(list(c.members), edges) for c in C.cells]
    elif dim == 2:
        faces = [_cycle(list(range(len(C.vertices))), edges)]
    else:
        faces = []
    lines = ["OFF", f"{len(C.vertices)} {len(faces)} {len(C.edges)}"]
    for v in C.vertices:
        lines.append(" ".join(str(x) for x in (list(v) + [0, 0, 0])[:3]))
    for f in faces:
        lines.append(" ".join(str(x) for x in [len(f), *f]))
    return "\n".join(lines) + "\n"


def corners_table(L: Lattice) -> list[dict[str, Any]]:
    index = L.index
    return [
        {"corner": list(r), "node": index[extremal_permutree(L, r)]}
        for r in corners(L.n)
    ]


def corners_csv(rows: list[dict[str, Any]], n: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"r{i}" for i in range(1, n)] + ["node"])
    for row in rows:
        w.writerow([*row["corner"], row["node"]])
    return buf.getvalue()

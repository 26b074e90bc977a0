"""The verification suite behind `permutrees verify`."""

from __future__ import annotations

import logging
import time
from typing import Any

from .decoration import Decoration
from .geometry import build_cubical, build_polytope, check_cube, verify_polytope
from .lattice import Lattice, check_lattice, enumerate_lattice, tree_from_inversion_set
from .oracle import BRUTEFORCE_MAX_N, PosetOracle, enumerate_bruteforce, tree_family
from .permutree import rotation_contract, validate_permutree

log = logging.getLogger(__name__)


def rotation_failures(L: Lattice, limit: int = 10) -> list[dict[str, Any]]:
    out = []
    for s, _, i, j in L.covers:
        problems = rotation_contract(L.trees[s], i, j)
        if problems:
            out.append({"source": s, "edge": [i, j], "problems": problems})
            if len(out) >= limit:
                break
    return out


def verify_delta(delta: Decoration, L: Lattice | None = None) -> dict[str, Any]:
    """Run every check for one decoration and collect a JSON-ready report."""
    start = time.perf_counter()
    if L is None:
        L = enumerate_lattice(delta)
    checks: dict[str, bool] = {}
    failures: list[dict[str, Any]] = []

    def record(name, bad):
        checks[name] = not bad
        failures.extend({"check": name, **b} for b in bad)

    record("trees valid", [
        {"node": k, "problems": p} for k, T in enumerate(L.trees) if (p := validate_permutree(T))
    ])
    record("tree round trip", [
        {"node": k} for k, E in enumerate(L.nodes) if tree_from_inversion_set(E, delta) != L.trees[k]
    ])
    if delta.n <= BRUTEFORCE_MAX_N:
        family = enumerate_bruteforce(delta)
        record("enumeration = brute force", [] if list(L.nodes) == family else [
            {"expected": len(family), "got": len(L)}
        ])
        climbed, _ = tree_family(delta)
        record("trees = rotation closure", [] if set(climbed) == set(L.nodes) else [
            {"expected": len(climbed), "got": len(L)}
        ])
        hasse = PosetOracle(L.nodes).hasse()
        mine = {(L.nodes[s], L.nodes[t]) for s, t, _, _ in L.covers}
        record("covers = Hasse diagram", [] if mine == hasse else [
            {"expected": len(hasse), "got": len(mine)}
        ])
    record("rotation contract", rotation_failures(L))
    lattice = check_lattice(delta, L)
    record("meet/join = oracle bounds", lattice.failures)

    P = build_polytope(L)
    C = build_cubical(L)
    poly = verify_polytope(P)
    cube = check_cube(C, P, L)
    for report in (poly, cube):
        for name, ok in report.checks.items():
            checks[name] = ok
        failures.extend(report.failures)
    log.info("%s: %d nodes checked in %.2fs", delta.word, len(L), time.perf_counter() - start)
    return {
        "delta": delta.word,
        "n": delta.n,
        "elements": len(L),
        "covers": len(L.covers),
        "facets": len(P.facets),
        "extremal": cube.details["extremal"],
        "tight_only_on_own_cuts": poly.details["tight_only_on_own_cuts"],
        "passed": all(checks.values()),
        "checks": dict(sorted(checks.items())),
        "failures": failures[:20],
    }

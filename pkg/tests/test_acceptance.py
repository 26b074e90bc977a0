"""Acceptance criteria 1-9, each at exact tolerance.

Every criterion is one test; its outcome is printed as a single
``criterion N: PASS/FAIL`` line and repeated in the pytest terminal
summary.  Run directly (``python tests/test_acceptance.py``) to see only
these lines.
"""

import random
import time
from contextlib import contextmanager
from math import factorial

import pytest

from permutrees.decoration import interior_decorations
from permutrees.geometry import (
    build_cubical,
    build_polytope,
    check_cube,
    extremal_permutree,
    verify_polytope,
)
from permutrees.lattice import check_lattice, enumerate_lattice, tree_from_inversion_set
from permutrees.oracle import PosetOracle, catalan, enumerate_bruteforce
from permutrees.order import (
    bridged_pairs,
    componentwise_meet,
    is_valid_inversion_set,
    meet,
    meet_one_pass,
)
from permutrees.pairs import InversionSet
from permutrees.permutree import (
    cubic_vector,
    inversion_set,
    inversion_vector,
    rotation_contract,
    strict_descendants,
    vertex_coordinates,
)

from conftest import ACCEPTANCE, delta_of, lattice_of


@contextmanager
def criterion(k: int, note: str):
    try:
        yield
    except BaseException:
        ACCEPTANCE[k] = (False, note)
        print(f"criterion {k}: FAIL  {note}")
        raise
    ACCEPTANCE[k] = (True, note)
    print(f"criterion {k}: PASS  {note}")


def sets(n, *rows):
    return InversionSet.from_components([set(r) for r in rows], n)


def test_criterion_1_meet_fixture():
    with criterion(1, "worked meet example gives {(2,4),(3,4)} with the displayed rows"):
        delta = delta_of("ubndd")
        assert delta.word == "nbndn"
        A = InversionSet.from_pairs(5, [(2, 3), (2, 4), (2, 5), (3, 4)])
        B = InversionSet.from_pairs(5, [(1, 2), (1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)])
        M = meet(A, B, delta)
        assert M.pairs() == [(2, 4), (3, 4)]
        I = bridged_pairs(A & B)
        rows = [
            (A.component(i), B.component(i), I.component(i), M.component(i)) for i in range(1, 5)
        ]
        # row 1: B(T)_1 is empty so the bridging column does not matter
        assert (rows[0][0], rows[0][1], rows[0][3]) == (set(), {2, 4, 5}, set())
        assert rows[1] == ({3, 4, 5}, {4, 5}, {3, 4}, {4})
        assert rows[2] == ({4}, {4, 5}, {4, 5}, {4})
        assert rows[3] == (set(), {5}, {5}, set())
        for a, b, i, m in rows:
            assert a & b & i == m


def test_criterion_2_binary_tree_meet():
    with criterion(2, "bracket meet fixture; one-pass and componentwise meets agree on Tamari, n <= 6"):
        delta = delta_of("ddddd")
        A = sets(5, {2, 3, 4, 5}, (), (), {5})
        B = sets(5, (), (), {4, 5}, {5})
        assert meet(A, B, delta) == sets(5, (), (), (), {5})
        pairs = 0
        for n in range(1, 7):
            L = lattice_of("d" * n)
            assert len(L) == catalan(n)
            for E1 in L.nodes:
                for E2 in L.nodes:
                    want = componentwise_meet(E1, E2)
                    assert meet_one_pass(E1, E2) == want
                    assert meet(E1, E2, L.delta) == want
                    pairs += 1
        assert pairs == sum(catalan(n) ** 2 for n in range(1, 7))


def _same_as_oracle(word):
    L = lattice_of(word)
    family = enumerate_bruteforce(L.delta)
    assert list(L.nodes) == family, word
    assert {(L.nodes[s], L.nodes[t]) for s, t, _, _ in L.covers} == PosetOracle(family).hasse(), word
    return len(L)


def test_criterion_3_counts():
    with criterion(3, "n!, Catalan, 2^(n-1) counts for n <= 6; all decorations at n = 4, 5 match the oracle"):
        for n in range(1, 7):
            assert _same_as_oracle("n" * n) == factorial(n)
            assert _same_as_oracle("d" * n) == catalan(n)
            assert _same_as_oracle("b" * n) == 2 ** (n - 1)
            for d in interior_decorations(n, "ud"):
                assert _same_as_oracle(d.word) == catalan(n)
        swept = 0
        for n in (4, 5):
            for d in interior_decorations(n):
                _same_as_oracle(d.word)
                swept += 1
        assert swept == 16 + 64


def test_criterion_4_lattice_property():
    with criterion(4, "meet and join equal oracle GLB/LUB on every pair, every decoration, n <= 5"):
        start = time.perf_counter()
        pairs = 0
        for n in range(1, 6):
            for d in interior_decorations(n):
                report = check_lattice(d, lattice_of(d.word))
                assert report.passed, report.as_dict()
                pairs += report.pairs_checked
        assert pairs == 73635
        assert time.perf_counter() - start < 60


@pytest.mark.xfail(strict=True, reason="a single pass of the bridging filter is not always the meet")
def test_criterion_4_literal_one_pass_reading():
    # nnnn: {13,14,23,24} and {12,13,14,24,34} give {14} in one pass; the meet is empty
    for n in range(1, 5):
        for d in interior_decorations(n):
            L = lattice_of(d.word)
            P = PosetOracle(L.nodes)
            for E1 in L.nodes:
                for E2 in L.nodes:
                    assert meet_one_pass(E1, E2) == P.glb(E1, E2)


def test_criterion_5_rotation_contract():
    with criterion(5, "every enumerated cover: closure rule and single-cut change (all n = 4, 20 sampled n <= 6)"):
        rng = random.Random(20240601)
        pool = [d.word for n in range(3, 7) for d in interior_decorations(n)]
        words = [d.word for d in interior_decorations(4)] + rng.sample(pool, 20)
        checked = 0
        for word in words:
            L = lattice_of(word)
            for s, t, i, j in L.covers:
                assert rotation_contract(L.trees[s], i, j) == [], (word, s, i, j)
                checked += 1
        assert checked > 0


def test_criterion_6_cube_embedding():
    with criterion(6, "cubic vectors embed every lattice n <= 5 in the stretched cube"):
        for n in range(1, 6):
            for d in interior_decorations(n):
                L = lattice_of(d.word)
                P, C = build_polytope(L), build_cubical(L)
                report = check_cube(C, P, L)
                assert report.passed, report.as_dict()
                assert report.details["extremal"] == 2 ** (n - 1)
                assert len(set(C.vertices)) == len(L)
                assert len(C.cells) == len(P.facets)
                assert all(axis is not None for _, _, axis in C.edges)


def test_criterion_7_fixtures():
    with criterion(7, "dunbndu set round-trips, corner (6,0,0,0,2,1) is unique, nbn square"):
        delta = delta_of("dunbndu")
        E = InversionSet.from_pairs(7, [(1, 2), (3, 4), (3, 6), (3, 7), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)])
        assert is_valid_inversion_set(E, delta)
        assert inversion_set(tree_from_inversion_set(E, delta)) == E

        L = lattice_of("dunbndu")
        corner = (6, 0, 0, 0, 2, 1)
        hits = [k for k, T in enumerate(L.trees) if cubic_vector(T) == corner]
        assert len(hits) == 1
        assert extremal_permutree(L, corner) == L.nodes[hits[0]]

        L = lattice_of("nbn")
        pairs = {(inversion_vector(T), cubic_vector(T)) for T in L.trees}
        assert ((1, 0), (2, 0)) in pairs
        assert set(build_cubical(L).vertices) == {(0, 0), (2, 0), (0, 1), (2, 1)}


def test_criterion_8_geometry():
    with criterion(8, "hyperplane, half-spaces, tightness on own cuts (n <= 5); leaf products for D^n"):
        for n in range(1, 6):
            for d in interior_decorations(n):
                P = build_polytope(lattice_of(d.word))
                assert all(sum(a) == n * (n + 1) // 2 for a in P.points)
                report = verify_polytope(P)
                assert report.passed, report.as_dict()
                assert report.checks.get("tight on own cuts", True)
        for n in range(1, 7):
            for T in lattice_of("d" * n).trees:
                expected = []
                for i in T.vertices:
                    below = strict_descendants(T, i)
                    left = 1 + sum(1 for x in below if x < i)
                    right = 1 + sum(1 for x in below if x > i)
                    expected.append(left * right)
                assert vertex_coordinates(T) == tuple(expected)


def test_criterion_9_specialization_vectors():
    with criterion(9, "c = b on {N,D}^n (n <= 6); b != c occurs for B^3"):
        for n in range(1, 7):
            for d in interior_decorations(n, "nd"):
                for T in lattice_of(d.word).trees:
                    assert cubic_vector(T) == inversion_vector(T)
        control = [T for T in enumerate_lattice(delta_of("bbb")).trees if cubic_vector(T) != inversion_vector(T)]
        assert control


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from permutrees.decoration import interior_decorations
from permutrees.pairs import InversionSet, transitive_closure
from permutrees.permutree import (
    Extreme,
    Permutree,
    RotationError,
    cubic_data,
    cubic_vector,
    cut_multiset,
    edge_cut,
    extreme_permutree,
    increasing_edges,
    inversion_set,
    inversion_vector,
    rotate,
    rotate_back,
    rotation_contract,
    strict_descendants,
    subtree,
    to_binary_sequence,
    validate_permutree,
    vertex_coordinates,
)

from conftest import delta_of, lattice_of


def tree_with_edges(word, edges):
    L = lattice_of(word)
    hits = [T for T in L.trees if T.edges() == sorted(edges)]
    assert len(hits) == 1, f"{word}: {len(hits)} trees with edges {edges}"
    return hits[0]


# -- extreme trees ------------------------------------------------------------

def test_min_chain():
    T = extreme_permutree(delta_of("nnn"), Extreme.MIN)
    assert T.edges() == [(1, 2), (2, 3)]
    assert inversion_set(T) == InversionSet.empty(3)


def test_extremes_of_nbun():
    d = delta_of("nbun")
    assert inversion_set(extreme_permutree(d, "max")).pairs() == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert inversion_set(extreme_permutree(d, "min")) == InversionSet.empty(4)


@pytest.mark.parametrize("word", ["n", "nn", "ndn", "nbun", "nudbn", "nbbbbn"])
def test_extremes_are_valid(word):
    d = delta_of(word)
    for which in Extreme:
        assert validate_permutree(extreme_permutree(d, which)) == []
    T = extreme_permutree(d, "min")
    for i in range(1, d.n):
        # i sits in the left-or-sole child slot of i+1
        name = "LD" if d[i + 1].two_children else "D"
        assert T.slot(i + 1, name) == i
        up = "RA" if d[i].two_parents else "A"
        assert T.slot(i, up) == i + 1


# -- validation ---------------------------------------------------------------

def test_detached_vertex_is_reported():
    d = delta_of("nnnn")
    # chain 1 -> 2 -> 3 -> 4 with vertex 2 cut loose: n - 2 edges missing
    T = Permutree(d, ((None,), (None,), (4,), (None,)), ((None,), (None,), (None,), (3,)))
    problems = validate_permutree(T)
    assert any(p.startswith("disconnected / edge count") for p in problems)


def test_label_condition_violation():
    d = delta_of("ndn")
    T = Permutree(d, ((2,), (None,), (2,)), ((None,), (3, 1), (None,)))
    assert "label condition at LD_2: vertex 3 on the wrong side" in validate_permutree(T)
    fixed = Permutree(d, ((2,), (None,), (2,)), ((None,), (1, 3), (None,)))
    assert validate_permutree(fixed) == []


def test_reciprocity_violation():
    d = delta_of("nnn")
    T = Permutree(d, ((2,), (3,), (None,)), ((None,), (None,), (2,)))
    assert any("reciprocity" in p for p in validate_permutree(T))


def test_undefined_slot_rejected():
    T = extreme_permutree(delta_of("ndn"), "min")
    with pytest.raises(KeyError):
        T.slot(2, "D")
    with pytest.raises(KeyError):
        subtree(T, 1, "LD")


# -- rotation -----------------------------------------------------------------

@pytest.mark.parametrize(
    "word, steps, result",
    [
        ("ndn", [(1, 2)], [(1, 2)]),
        ("nbn", [(2, 3)], [(2, 3)]),
        ("nnn", [(1, 2), (1, 3)], [(1, 2), (1, 3)]),
    ],
)
def test_rotation_examples(word, steps, result):
    T = extreme_permutree(delta_of(word), "min")
    for i, j in steps:
        T = rotate(T, i, j)
        assert validate_permutree(T) == []
        assert T.has_edge(j, i)
    assert inversion_set(T).pairs() == result


def test_rotation_errors():
    T = extreme_permutree(delta_of("nnn"), "min")
    with pytest.raises(RotationError, match="not an edge"):
        rotate(T, 1, 3)
    with pytest.raises(RotationError, match="i < j"):
        rotate(T, 2, 1)
    T2 = rotate(T, 1, 2)
    with pytest.raises(RotationError, match="oriented 2->1"):
        rotate(T2, 1, 2)
    with pytest.raises(RotationError):
        rotate_back(T, 1, 2)


def test_cut_of_rotated_edge_is_replaced():
    # 1 -> 2 -> 3: the cut {1} | {2,3} gives way to {2} | {1,3}
    T = extreme_permutree(delta_of("nnn"), "min")
    T2 = rotate(T, 1, 2)
    assert edge_cut(T, 1, 2).parts == (frozenset({1}), frozenset({2, 3}))
    assert edge_cut(T2, 2, 1).parts == (frozenset({2}), frozenset({1, 3}))
    assert cut_multiset(T) - cut_multiset(T2) == Counter({edge_cut(T, 1, 2).parts: 1})


@pytest.mark.parametrize("word", [d.word for n in (2, 3, 4, 5) for d in interior_decorations(n)])
def test_rotation_contract_on_every_cover(word):
    L = lattice_of(word)
    for s, t, i, j in L.covers:
        assert rotation_contract(L.trees[s], i, j) == []
        assert inversion_set(rotate(L.trees[s], i, j)) == L.nodes[t]


@st.composite
def rotation_walks(draw):
    n = draw(st.integers(2, 7))
    word = "n" + "".join(draw(st.lists(st.sampled_from("ndub"), min_size=n - 2, max_size=n - 2))) + "n"
    choices = draw(st.lists(st.integers(0, 100), max_size=25))
    return word, choices


@settings(max_examples=60, deadline=None)
@given(rotation_walks())
def test_random_rotation_walks(walk):
    word, choices = walk
    T = extreme_permutree(delta_of(word), "min")
    B = inversion_set(T)
    for c in choices:
        ups = increasing_edges(T)
        if not ups:
            assert B == InversionSet.full(T.n)
            break
        i, j = ups[c % len(ups)]
        assert rotation_contract(T, i, j) == []
        T2 = rotate(T, i, j)
        assert rotate_back(T2, i, j) == T
        B2 = inversion_set(T2)
        assert B < B2 and B2 == transitive_closure(B.add(i, j))
        T, B = T2, B2


# -- cuts, subtrees, descendants ------------------------------------------------

def test_edge_cuts_of_nbud_example():
    T = tree_with_edges("nbud", [(2, 1), (2, 3), (4, 2)])
    assert edge_cut(T, 2, 1).parts == (frozenset({2, 3, 4}), frozenset({1}))
    assert edge_cut(T, 2, 3).parts == (frozenset({1, 2, 4}), frozenset({3}))
    assert edge_cut(T, 4, 2).parts == (frozenset({4}), frozenset({1, 2, 3}))
    with pytest.raises(ValueError):
        edge_cut(T, 1, 2)


def test_subtree_versus_descendants():
    T = tree_with_edges("nbn", [(2, 1), (2, 3)])
    assert subtree(T, 1, "D") == {2, 3}
    assert strict_descendants(T, 1) == {2}
    assert subtree(T, 2, "LD") == frozenset()


@pytest.mark.parametrize("word", [d.word for n in (3, 4, 5) for d in interior_decorations(n)])
def test_descendants_inside_child_components(word):
    for T in lattice_of(word).trees:
        for i in T.vertices:
            names = [s for s in T.slot_names(i) if s.endswith("D")]
            comps = frozenset().union(*(subtree(T, i, s) for s in names))
            desc = strict_descendants(T, i)
            assert desc <= comps
            # equality exactly when no two-parent vertex hangs below
            if not any(T.delta[v].two_parents for v in comps):
                assert desc == comps


# -- vectors --------------------------------------------------------------------

def test_inversion_sets_of_two_nbun_elements():
    L = lattice_of("nbun")
    for pairs in ([(2, 4), (3, 4)], [(1, 2), (3, 4)]):
        E = InversionSet.from_pairs(4, pairs)
        assert inversion_set(L.tree(E)) == E


def test_cubic_vector_of_split_nbn_tree():
    T = tree_with_edges("nbn", [(2, 1), (2, 3)])
    assert inversion_vector(T) == (1, 0)
    assert cubic_vector(T) == (2, 0)
    assert cubic_data(T).as_set().pairs() == [(1, 2), (1, 3)]


@pytest.mark.parametrize("word", [d.word for n in (1, 2, 3, 4, 5) for d in interior_decorations(n)])
def test_cubic_vector_of_max(word):
    d = delta_of(word)
    assert cubic_vector(extreme_permutree(d, "max")) == tuple(range(d.n - 1, 0, -1))
    assert cubic_vector(extreme_permutree(d, "min")) == (0,) * (d.n - 1)


@pytest.mark.parametrize("word", [d.word for n in (3, 4, 5) for d in interior_decorations(n, "nd")])
def test_cubic_equals_inversion_without_up_vertices(word):
    for T in lattice_of(word).trees:
        assert cubic_vector(T) == inversion_vector(T)


def test_vertex_coordinates_of_chains():
    d = delta_of("nnn")
    assert vertex_coordinates(extreme_permutree(d, "min")) == (1, 2, 3)
    assert vertex_coordinates(extreme_permutree(d, "max")) == (3, 2, 1)


@pytest.mark.parametrize("word", [d.word for d in interior_decorations(4)])
def test_vertex_coordinates_sum(word):
    for T in lattice_of(word).trees:
        assert sum(vertex_coordinates(T)) == 10


# -- binary sequences -----------------------------------------------------------

def test_binary_sequences():
    d = delta_of("nbn")
    assert to_binary_sequence(extreme_permutree(d, "min")) == "00"
    assert to_binary_sequence(extreme_permutree(d, "max")) == "11"
    assert to_binary_sequence(tree_with_edges("nbn", [(2, 1), (2, 3)])) == "10"
    with pytest.raises(ValueError):
        to_binary_sequence(extreme_permutree(delta_of("ndn"), "min"))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_binary_sequences_are_a_bijection(n):
    L = lattice_of("n" + "b" * (n - 2) + "n")
    words = {to_binary_sequence(T) for T in L.trees}
    assert len(words) == len(L) == 2 ** (n - 1)

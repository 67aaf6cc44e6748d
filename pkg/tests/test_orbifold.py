import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mutorb.blocks import TEMPLATES, BlockDecomposition, Placement, assemble, find_s_decomposition
from mutorb.core_matrix import mutate_matrix
from mutorb.errors import BoundaryArc, NotFlippable, UntriangulatedInput
from mutorb.fixtures import (
    HALF,
    ORBIFOLD_BLOCKS,
    SURFACE_BLOCKS,
    TWO,
    elementary,
    ptolemy_digon,
    ptolemy_monogon,
    triangulation,
    weight_choices,
)
from mutorb.orbifold import (
    flip,
    flip_graph,
    is_flippable,
    orbifold_of_decomposition,
    signed_adjacency,
    triangulation_key,
)

ALL_PIECES = [(k, w) for k in SURFACE_BLOCKS + ORBIFOLD_BLOCKS for w in weight_choices(k)]


def _single(kind, weights=()):
    tpl = TEMPLATES[kind]
    return BlockDecomposition(tpl.size, (Placement(kind, tuple(range(tpl.size))),), dict(zip(tpl.pending, weights)))


def test_ideal_triangle_has_empty_matrix():
    T = triangulation([], [], ["b1", "b2", "b3"], [("b1", "b2", "b3")])
    assert signed_adjacency(T).n == 0


def test_digon_matrices_for_both_weights():
    assert signed_adjacency(elementary("IIIa~", [TWO])).tolist() == [[0, -1], [2, 0]]
    assert signed_adjacency(elementary("IIIb~", [TWO])).tolist() == [[0, -2], [1, 0]]
    assert signed_adjacency(elementary("IIIa~"), [HALF]).tolist() == [[0, -2], [1, 0]]


def test_decomposition_of_digon_block():
    sig, T = orbifold_of_decomposition(_single("IIIa~", [HALF]))
    assert sig.orbifold_points == (HALF,)
    assert len(T.pending_at) == 1 and len(T.interior_arcs) == 2


def test_decomposition_of_triangle_block():
    sig, T = orbifold_of_decomposition(_single("II"))
    assert len(T.interior_arcs) == 3
    assert sig.genus == 0 and sig.punctures == 0 and sig.boundary == (6,)


def test_decomposition_of_monogon_block():
    sig, T = orbifold_of_decomposition(_single("V12~", [TWO, TWO]))
    assert len(sig.orbifold_points) == 2
    monogons = [t for t in T.triangles if sum(a in T.pending_at for a in t) == 2]
    assert len(monogons) == 1


@pytest.mark.parametrize("kind, weights", ALL_PIECES)
def test_generated_piece_matches_fixture(kind, weights):
    _, T = orbifold_of_decomposition(_single(kind, weights))
    assert signed_adjacency(T) == signed_adjacency(elementary(kind, weights))


def test_digon_flip_moves_pending_arc():
    T = ptolemy_digon(HALF)
    T2 = flip(T, "gamma")
    assert T2 != T
    assert flip(T2, "gamma") == T
    assert len(flip_graph(T)) == 2


def test_square_flip():
    T = triangulation(["d"], [], ["b1", "b2", "b3", "b4"], [("b1", "b2", "d"), ("d", "b3", "b4")])
    T2 = flip(T, "d")
    assert set(T2.triangles) != set(T.triangles)
    assert flip(T2, "d") == T


def test_monogon_pending_flip():
    T = ptolemy_monogon(TWO, TWO)
    T2 = flip(T, "nu")
    assert T2 != T and T2.signature() == T.signature()
    assert sum(1 for t in T2.triangles if sum(a in T2.pending_at for a in t) == 2) == 1
    assert signed_adjacency(T2) == mutate_matrix(signed_adjacency(T), 2)


def test_boundary_and_self_folded_arcs_do_not_flip():
    T = elementary("IIIa")
    with pytest.raises(BoundaryArc):
        flip(T, "b1")
    assert not is_flippable(T, "3")
    with pytest.raises(NotFlippable):
        flip(T, "3")


def test_flip_graph_counts(oracles):
    pent = triangulation(
        ["d1", "d2"], [], ["b1", "b2", "b3", "b4", "b5"], [("b1", "b2", "d1"), ("d1", "b3", "d2"), ("d2", "b4", "b5")]
    )
    assert len(flip_graph(pent)) == oracles["polygon_triangulations"]["5"]
    assert len(flip_graph(pent, radius_cap=0)) == 1
    # the piece of block II is a hexagon
    assert len(flip_graph(elementary("II"))) == oracles["A3"]["clusters"]


def test_malformed_triangulations():
    with pytest.raises(UntriangulatedInput):
        triangulation(["d"], [], ["b1", "b2", "b3"], [("b1", "b2", "d")])
    with pytest.raises(UntriangulatedInput):
        triangulation(["p"], ["p"], ["b1", "b2"], [("b1", "b2", "p")], [Fraction(3)])


def test_key_ignores_interior_labels():
    T = elementary("IV~")
    rename = {"1": "x", "2": "y", "3": "z"}
    R = triangulation(
        ["x", "y", "z"], ["z"], [f"b{i}" for i in range(1, 5)], [tuple(rename.get(a, a) for a in t) for t in T.triangles]
    )
    assert triangulation_key(R) == triangulation_key(T)


@given(st.sampled_from(ALL_PIECES), st.lists(st.integers(0, 10), max_size=8))
def test_random_flip_sequences_commute_with_mutation(piece, seq):
    T = elementary(*piece)
    for r in seq:
        arcs = [a for a in T.interior_arcs if is_flippable(T, a)]
        if not arcs:
            break
        a = arcs[r % len(arcs)]
        B = signed_adjacency(T)
        T2 = flip(T, a)
        assert T2.interior_arcs == T.interior_arcs
        assert signed_adjacency(T2) == mutate_matrix(B, T.interior_arcs.index(a))
        assert flip(T2, a) == T
        T = T2


def test_signature_is_flip_invariant():
    rng = random.Random(5)
    for kind, weights in ALL_PIECES:
        T = elementary(kind, weights)
        sig = T.signature()
        for _ in range(10):
            arcs = [a for a in T.interior_arcs if is_flippable(T, a)]
            T = flip(T, rng.choice(arcs))
            assert T.signature() == sig


def test_glued_orbifold_matches_diagram():
    D = assemble(["IV~", "II", "IIIa~"], [((0, 0), (1, 0)), ((1, 1), (2, 0))])
    dec = find_s_decomposition(D)
    sig, T = orbifold_of_decomposition(dec)
    assert signed_adjacency(T).n == D.n
    assert sig.rank == D.n

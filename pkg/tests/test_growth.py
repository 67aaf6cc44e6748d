import pytest

from mutorb.blocks import TEMPLATES
from mutorb.core_matrix import Diagram, ExchangeMatrix
from mutorb.fixtures import (
    A3,
    A3_PATH,
    AFFINE_A,
    B2,
    GAMMA_1_1,
    ORBIFOLD_BLOCKS,
    PANTS,
    SURFACE_BLOCKS,
    TORUS_ONE_HOLE,
    WEIGHT_FIVE_PROBE,
    elementary,
    weight_choices,
)
from mutorb.growth import (
    CUBIC,
    EXPONENTIAL,
    FINITE,
    LINEAR,
    QUADRATIC,
    UNCLASSIFIED,
    ball_sizes,
    classify_growth,
    enumerate_mutation_class,
    growth_of_signature,
    growth_report,
    is_mutation_finite,
)
from mutorb.orbifold import signed_adjacency
from mutorb.unfolding import unfold


def test_rank_two_classes():
    assert enumerate_mutation_class(Diagram(2, {(0, 1): 1})).size == 1
    assert enumerate_mutation_class(Diagram(2, {(1, 0): 2})).size == 1
    # with vertex weights (1, 2) the two orientations are not isomorphic
    assert enumerate_mutation_class(ExchangeMatrix(((0, -1), (2, 0)))).size == 2
    assert is_mutation_finite(Diagram(2, {(0, 1): 9}))


def test_class_sizes_match_oracle(oracles):
    sizes = oracles["class_sizes"]
    assert enumerate_mutation_class(A3).size == sizes["A3"]
    assert enumerate_mutation_class(AFFINE_A).size == sizes["affine"]
    assert enumerate_mutation_class(GAMMA_1_1).size == sizes["gamma11"]
    assert enumerate_mutation_class(TORUS_ONE_HOLE).size == sizes["torus"]
    assert enumerate_mutation_class(ExchangeMatrix(((0, 1, -1), (-1, 0, 1), (2, -2, 0)))).size == sizes["IV~ weight 2"]
    assert enumerate_mutation_class(ExchangeMatrix(((0, 2, -2), (-1, 0, 1), (2, -2, 0)))).size == sizes["V12~ weight 2"]


@pytest.mark.parametrize("kind", SURFACE_BLOCKS + ORBIFOLD_BLOCKS)
def test_elementary_pieces_are_mutation_finite(kind):
    for w in weight_choices(kind):
        assert is_mutation_finite(signed_adjacency(elementary(kind, w)))


def test_weight_five_probe_is_infinite():
    assert not is_mutation_finite(WEIGHT_FIVE_PROBE)
    mc = enumerate_mutation_class(WEIGHT_FIVE_PROBE, stop_on_heavy=True)
    assert not mc.complete and "above 4" in mc.reason


def test_cap_is_reported():
    mc = enumerate_mutation_class(TORUS_ONE_HOLE, cap=3)
    assert mc.size == "exceeded"


@pytest.mark.parametrize(
    "D, expected",
    [(A3_PATH, FINITE), (AFFINE_A, LINEAR), (GAMMA_1_1, QUADRATIC), (PANTS, CUBIC), (TORUS_ONE_HOLE, EXPONENTIAL)],
)
def test_classification(D, expected):
    assert classify_growth(D) == expected


def test_signature_table():
    assert growth_of_signature(0, 1, 0) == FINITE
    assert growth_of_signature(0, 1, 1) == FINITE
    assert growth_of_signature(0, 1, 2) == LINEAR
    assert growth_of_signature(0, 2, 0) == LINEAR
    assert growth_of_signature(0, 2, 1) == QUADRATIC
    assert growth_of_signature(0, 3, 0) == CUBIC
    assert growth_of_signature(1, 1, 0) == EXPONENTIAL
    assert growth_of_signature(0, 0, 4) == EXPONENTIAL


def test_non_decomposable_is_unclassified():
    # E6 is not block-decomposable
    e6 = Diagram(6, {(0, 1): 1, (1, 2): 1, (2, 3): 1, (3, 4): 1, (2, 5): 1})
    assert classify_growth(e6) == UNCLASSIFIED


def test_weighted_classification():
    assert classify_growth(B2) == FINITE
    assert classify_growth(ExchangeMatrix(((0, 2, -2), (-1, 0, 1), (2, -2, 0)))) == LINEAR


def test_ball_sizes():
    assert ball_sizes(B2, 0) == [1]
    assert ball_sizes(B2, 6) == [1, 3, 5, 6, 6, 6, 6]
    assert ball_sizes(A3, 8, unlabeled=True)[-1] == 14


def test_report():
    rep = growth_report(A3_PATH, radius=3)
    assert rep.classification == FINITE and rep.class_size == 4
    assert rep.ball_sizes[0] == 1
    assert str(rep).splitlines()[0] == FINITE


@pytest.mark.parametrize("kind", ORBIFOLD_BLOCKS)
def test_unfolding_has_the_same_growth(kind):
    B = signed_adjacency(elementary(kind))
    assert classify_growth(unfold(B).C) == classify_growth(B)


def test_mixed_fixture_balls_track_unfolding():
    # unfolding is a quasi-isometry of exchange graphs; the ratio of ball sizes stays bounded
    from mutorb.fixtures import multi_point_orbifold

    _, B = multi_point_orbifold("two weight 1/2 points with boundary")
    C = unfold(B).C
    small = ball_sizes(B, 7, unlabeled=True)
    big = ball_sizes(C, 7, unlabeled=True)
    ratios = [b / a for a, b in zip(small, big)]
    assert classify_growth(B) == classify_growth(C)
    assert max(ratios[3:]) <= 3 * min(ratios[3:])

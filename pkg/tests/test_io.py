import json
from fractions import Fraction

import pytest

from mutorb import io
from mutorb.blocks import BlockDecomposition, Placement
from mutorb.core_matrix import ExchangeMatrix, diagram_of
from mutorb.errors import InvalidMatrix, ShapeMismatch
from mutorb.fixtures import HALF, ptolemy_monogon
from mutorb.unfolding import local_unfolding


def test_matrix_format():
    B = ExchangeMatrix(((0, -1), (2, 0)))
    text = io.dumps(io.matrix_to_json(B))
    assert text == '{"b":[[0,-1],[2,0]],"n":2}'
    assert io.matrix_from_json(json.loads(text)) == B
    assert io.matrix_from_json([[0, -1], [2, 0]]) == B


def test_matrix_format_errors():
    with pytest.raises(ShapeMismatch):
        io.matrix_from_json({"n": 3, "b": [[0, 1], [-1, 0]]})
    with pytest.raises(InvalidMatrix):
        io.matrix_from_json({"n": 2})


def test_diagram_round_trip():
    D = diagram_of([[0, 1, -1], [-1, 0, 1], [2, -2, 0]])
    assert io.diagram_from_json(json.loads(io.dumps(io.diagram_to_json(D)))) == D
    with pytest.raises(ShapeMismatch):
        io.diagram_from_json({"n": 2, "edges": [[1, 3, 1]]})


def test_decomposition_round_trip():
    dec = BlockDecomposition(3, (Placement("V12~", (0, 1, 2)),), {0: HALF, 2: Fraction(2)})
    assert io.decomposition_from_json(io.decomposition_to_json(dec)) == dec
    with pytest.raises(ShapeMismatch):
        io.decomposition_from_json({"n": 2, "blocks": [{"kind": "II", "vertices": [1, 2]}]})


def test_triangulation_round_trip():
    T = ptolemy_monogon(HALF, Fraction(2))
    assert io.triangulation_from_json(json.loads(io.dumps(io.triangulation_to_json(T)))) == T


def test_candidate_round_trip():
    cand = local_unfolding([[0, -2], [1, 0]])
    assert io.candidate_from_json(io.candidate_to_json(cand)) == cand

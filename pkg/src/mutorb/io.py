"""JSON file formats shared by the library and the command line.

All vertex and arc indices in files are 1-based.  Output uses sorted keys
and compact separators so that equal objects serialize to equal bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .blocks import TEMPLATES, BlockDecomposition, Placement
from .core_matrix import Diagram, ExchangeMatrix, as_rows
from .errors import InvalidMatrix, ShapeMismatch
from .orbifold import Triangulation


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _frac(x: object) -> Fraction:
    return Fraction(str(x))


# matrices -------------------------------------------------------------


def matrix_from_json(data: Any) -> ExchangeMatrix:
    """Read ``{"n": int, "b": [[...]]}``; a bare nested list is also accepted."""
    if isinstance(data, Mapping):
        if "b" not in data:
            raise InvalidMatrix("object has no 'b' field")
        rows = as_rows(data["b"])
        if "n" in data and int(data["n"]) != len(rows):
            raise ShapeMismatch(f"n={data['n']} but b has {len(rows)} rows")
        return ExchangeMatrix(rows)
    return ExchangeMatrix(as_rows(data))


def matrix_to_json(B: ExchangeMatrix) -> dict:
    return {"n": B.n, "b": B.tolist()}


# diagrams -------------------------------------------------------------


def diagram_from_json(data: Any) -> Diagram:
    """``{"n": int, "edges": [[i, j, w], ...], "vertex_weights": [d_1, ...]}``, weights optional.

    ``"weights"`` is read as an alias of ``"vertex_weights"``.  A bare nested list is read as an exchange matrix and converted.
    """
    if isinstance(data, list) or (isinstance(data, Mapping) and "b" in data):
        from .core_matrix import diagram_of

        B = matrix_from_json(data)
        return diagram_of(B).with_vertex_weights(None if B.is_skew_symmetric() else B.d)
    n = int(data["n"])
    edges = {}
    for e in data.get("edges", []):
        i, j, w = (int(x) for x in e)
        if not (1 <= i <= n and 1 <= j <= n):
            raise ShapeMismatch(f"edge {e} out of range")
        edges[(i - 1, j - 1)] = w
    weights = data.get("vertex_weights", data.get("weights"))
    return Diagram(n, edges, tuple(int(x) for x in weights) if weights is not None else None)


def diagram_to_json(D: Diagram) -> dict:
    out: dict = {"n": D.n, "edges": [[i + 1, j + 1, w] for i, j, w in sorted(D.edge_list())]}
    if D.vertex_weights is not None:
        out["vertex_weights"] = list(D.vertex_weights)
    return out


# decompositions -------------------------------------------------------


def decomposition_to_json(dec: BlockDecomposition) -> dict:
    return {
        "n": dec.n,
        "blocks": [{"kind": pl.kind, "vertices": [v + 1 for v in pl.vertices]} for pl in dec.blocks],
        "orbifold_weights": {str(v + 1): str(w) for v, w in sorted(dec.orbifold_weights.items())},
    }


def decomposition_from_json(data: Mapping) -> BlockDecomposition:
    blocks = []
    for b in data["blocks"]:
        kind = str(b["kind"])
        if kind not in TEMPLATES:
            raise ShapeMismatch(f"unknown block kind {kind!r}")
        verts = tuple(int(v) - 1 for v in b["vertices"])
        if len(verts) != TEMPLATES[kind].size:
            raise ShapeMismatch(f"block {kind} needs {TEMPLATES[kind].size} vertices")
        blocks.append(Placement(kind, verts))
    weights = {int(k) - 1: _frac(w) for k, w in dict(data.get("orbifold_weights", {})).items()}
    return BlockDecomposition(int(data["n"]), tuple(blocks), weights)


# triangulations -------------------------------------------------------


def triangulation_to_json(T: Triangulation) -> dict:
    return {
        "arcs": [[a, k] for a, k in T.arcs],
        "triangles": [list(t) for t in T.triangles],
        "pending_at": {a: p + 1 for a, p in sorted(T.pending_at.items())},
        "orbifold_weights": [str(w) for w in T.orbifold_weights],
    }


def triangulation_from_json(data: Mapping) -> Triangulation:
    return Triangulation(
        tuple((str(a), str(k)) for a, k in data["arcs"]),
        tuple(tuple(str(x) for x in t) for t in data["triangles"]),
        {str(a): int(p) - 1 for a, p in dict(data.get("pending_at", {})).items()},
        tuple(_frac(w) for w in data.get("orbifold_weights", [])),
    )


# unfolding candidates -------------------------------------------------


def candidate_to_json(cand: Any) -> dict:
    return {
        "B": cand.B.tolist(),
        "C": cand.C.tolist(),
        "partition": [[i + 1 for i in block] for block in cand.partition],
    }


def candidate_from_json(data: Mapping) -> Any:
    from .unfolding import UnfoldingCandidate

    return UnfoldingCandidate(
        ExchangeMatrix(as_rows(data["B"])),
        ExchangeMatrix(as_rows(data["C"])),
        tuple(tuple(int(i) - 1 for i in block) for block in data["partition"]),
    )


__all__ = [
    "dumps",
    "load_json",
    "matrix_from_json",
    "matrix_to_json",
    "diagram_from_json",
    "diagram_to_json",
    "decomposition_from_json",
    "decomposition_to_json",
    "triangulation_from_json",
    "triangulation_to_json",
    "candidate_from_json",
    "candidate_to_json",
]

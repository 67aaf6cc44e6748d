"""Hand-built triangulations, matrices and diagrams used by tests and demos.

Arc labels are strings; ``b1, b2, ...`` are boundary segments.  Elementary
pieces carry one arc per diagram vertex of the matching block, labeled
``1..n`` in block vertex order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .blocks import BlockDecomposition, Placement
from .core_matrix import Diagram, ExchangeMatrix
from .orbifold import BOUNDARY, ORDINARY, PENDING_ARC, Triangulation, orbifold_of_decomposition, signed_adjacency

HALF, TWO = Fraction(1, 2), Fraction(2)


def triangulation(
    interior: Sequence[str],
    pending: Sequence[str],
    boundary: Sequence[str],
    triangles: Sequence[Sequence[str]],
    weights: Sequence[Fraction] | None = None,
) -> Triangulation:
    """Build a triangulation; pending arcs get orbifold points in the listed order."""
    arcs = [(a, PENDING_ARC if a in pending else ORDINARY) for a in interior]
    arcs += [(b, BOUNDARY) for b in boundary]
    w = tuple(weights) if weights is not None else (TWO,) * len(pending)
    return Triangulation(tuple(arcs), tuple(tuple(t) for t in triangles), {p: i for i, p in enumerate(pending)}, w)


def _b(k: int) -> list[str]:
    return [f"b{i}" for i in range(1, k + 1)]


# elementary pieces: (interior arcs, pending arcs, boundary count, triangles)
_ELEMENTARY = {
    "I": ("12", "", 5, [("1", "b1", "2"), ("1", "b2", "b3"), ("2", "b4", "b5")]),
    "II": ("123", "", 6, [("1", "3", "2"), ("1", "b1", "b2"), ("2", "b3", "b4"), ("3", "b5", "b6")]),
    "IIIa": ("123", "", 3, [("1", "2", "b1"), ("1", "b2", "b3"), ("2", "3", "3")]),
    "IIIb": ("123", "", 3, [("1", "2", "2"), ("1", "3", "b1"), ("3", "b2", "b3")]),
    "IV": ("1234", "", 4, [("1", "3", "2"), ("1", "b1", "b2"), ("2", "b3", "b4"), ("3", "4", "4")]),
    "V": ("12345", "", 2, [("1", "3", "2"), ("1", "b1", "b2"), ("2", "5", "5"), ("3", "4", "4")]),
    "IIIa~": ("12", "2", 3, [("1", "2", "b1"), ("1", "b2", "b3")]),
    "IIIb~": ("12", "1", 3, [("1", "2", "b1"), ("2", "b2", "b3")]),
    "IV~": ("123", "3", 4, [("1", "3", "2"), ("1", "b1", "b2"), ("2", "b3", "b4")]),
    "V1~": ("1234", "3", 2, [("1", "3", "2"), ("1", "b1", "b2"), ("2", "4", "4")]),
    "V2~": ("1234", "1", 2, [("1", "3", "2"), ("2", "4", "4"), ("3", "b1", "b2")]),
    "V12~": ("123", "13", 2, [("1", "3", "2"), ("2", "b1", "b2")]),
    "VI~": ("12345", "5", 0, [("1", "3", "3"), ("1", "5", "2"), ("2", "4", "4")]),
}

SURFACE_BLOCKS = ("I", "II", "IIIa", "IIIb", "IV", "V")
ORBIFOLD_BLOCKS = ("IIIa~", "IIIb~", "IV~", "V1~", "V2~", "V12~", "VI~")


def elementary(kind: str, weights: Sequence[Fraction] | None = None) -> Triangulation:
    """Triangulated piece whose diagram is the block ``kind``."""
    inner, pend, nb, tris = _ELEMENTARY[kind]
    return triangulation(list(inner), list(pend), _b(nb), tris, weights)


def weight_choices(kind: str) -> list[tuple[Fraction, ...]]:
    """All assignments of orbifold weights to the pending arcs of a piece."""
    k = len(_ELEMENTARY[kind][1])
    out: list[tuple[Fraction, ...]] = [()]
    for _ in range(k):
        out = [w + (x,) for w in out for x in (TWO, HALF)]
    return out


# configurations of the orbifold Ptolemy relations ---------------------


def ptolemy_digon(weight: Fraction) -> Triangulation:
    """Digon with boundary sides alpha, beta and pending arc gamma."""
    return triangulation(["gamma"], ["gamma"], ["alpha", "beta"], [("alpha", "beta", "gamma")], [weight])


def ptolemy_digon_quad(weight: Fraction) -> Triangulation:
    """Digon (beta, alpha, gamma) glued along beta to a triangle (beta, xi, theta)."""
    return triangulation(
        ["beta", "gamma"],
        ["gamma"],
        ["alpha", "theta", "xi"],
        [("beta", "alpha", "gamma"), ("beta", "xi", "theta")],
        [weight],
    )


def ptolemy_monogon(weight_mu: Fraction, weight_nu: Fraction) -> Triangulation:
    """Monogon bounded by the loop eta holding pending arcs mu and nu, inside a digon (psi, phi)."""
    return triangulation(
        ["eta", "mu", "nu"],
        ["mu", "nu"],
        ["psi", "phi"],
        [("eta", "mu", "nu"), ("eta", "psi", "phi")],
        [weight_mu, weight_nu],
    )


# (triangulation factory, flipped arc)
PTOLEMY_CONFIGURATIONS = {
    "prime-a": (lambda: ptolemy_digon(HALF), "gamma"),
    "prime-b": (lambda: ptolemy_digon_quad(HALF), "beta"),
    "prime-c": (lambda: ptolemy_monogon(HALF, HALF), "nu"),
    "prime-d": (lambda: ptolemy_monogon(HALF, HALF), "eta"),
    "local-a": (lambda: ptolemy_digon(TWO), "gamma"),
    "local-b": (lambda: ptolemy_digon_quad(TWO), "beta"),
    "local-c": (lambda: ptolemy_monogon(TWO, TWO), "nu"),
    "local-d": (lambda: ptolemy_monogon(TWO, TWO), "eta"),
    "gen-a": (lambda: ptolemy_monogon(HALF, TWO), "nu"),
    "gen-b": (lambda: ptolemy_monogon(HALF, TWO), "mu"),
    "gen-c": (lambda: ptolemy_monogon(HALF, TWO), "eta"),
}


# matrices and diagrams ------------------------------------------------

B2 = ExchangeMatrix(((0, 1), (-2, 0)))
A3 = ExchangeMatrix(((0, 1, 0), (-1, 0, 1), (0, -1, 0)))
IV_TILDE_HALF = ExchangeMatrix(((0, 1, -2), (-1, 0, 2), (1, -1, 0)))
IV_TILDE_TWO = ExchangeMatrix(((0, 1, -1), (-1, 0, 1), (2, -2, 0)))
V12_TILDE_TWO = ExchangeMatrix(((0, 2, -2), (-1, 0, 1), (2, -2, 0)))
HEXAGON = ExchangeMatrix(((0, 1, -1), (-1, 0, 1), (1, -1, 0)))
WEIGHT_FIVE_PROBE = Diagram(3, {(0, 1): 5, (1, 2): 1})


def _diagram(n: int, edges: Sequence[tuple[int, int, int]]) -> Diagram:
    return Diagram(n, {(a, b): w for a, b, w in edges})


# annulus with one and two marked points on its boundary circles
AFFINE_A = _diagram(3, [(0, 1, 1), (1, 2, 1), (2, 0, 4)])
# annulus with one marked point on each boundary circle and one puncture
GAMMA_1_1 = _diagram(5, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (1, 4, 1), (2, 0, 4)])
# torus with one boundary circle carrying two marked points
TORUS_ONE_HOLE = _diagram(5, [(0, 1, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 0, 4), (3, 2, 1), (3, 4, 1), (4, 1, 1)])
# pair of pants with one marked point per boundary circle
PANTS = _diagram(6, [(0, 1, 4), (1, 2, 1), (2, 0, 1), (2, 5, 1), (3, 4, 1), (3, 5, 1), (4, 2, 1), (5, 4, 1)])
A3_PATH = _diagram(3, [(0, 1, 1), (1, 2, 1)])


# orbifolds with several orbifold points: (n, placements, orbifold weights)
_MULTI_POINT = {
    "closed sphere, three weight 1/2 points": (
        6,
        [("V12~", (0, 1, 2)), ("V1~", (1, 3, 4, 5))],
        {0: HALF, 2: HALF, 4: HALF},
    ),
    "closed sphere, four weight 1/2 points": (
        5,
        [("V12~", (0, 1, 2)), ("V12~", (3, 1, 4))],
        {0: HALF, 2: HALF, 3: HALF, 4: HALF},
    ),
    "mixed weights": (5, [("V12~", (0, 1, 2)), ("IV~", (1, 3, 4))], {0: HALF, 2: HALF, 4: TWO}),
    "two weight 1/2 points with boundary": (4, [("IIIa~", (0, 1)), ("IV~", (0, 2, 3))], {1: HALF, 3: HALF}),
    "closed sphere, two punctures and two points": (
        4,
        [("IV~", (0, 1, 2)), ("IV~", (0, 1, 3))],
        {2: HALF, 3: HALF},
    ),
}


def multi_point_orbifold(name: str):
    """Signature and matrix of a glued orbifold with several orbifold points."""
    n, pls, ow = _MULTI_POINT[name]
    dec = BlockDecomposition(n, tuple(Placement(k, v) for k, v in pls), ow)
    sig, T = orbifold_of_decomposition(dec)
    return sig, signed_adjacency(T)


MULTI_POINT_CASES = tuple(_MULTI_POINT)


__all__ = [
    "HALF",
    "TWO",
    "triangulation",
    "elementary",
    "weight_choices",
    "SURFACE_BLOCKS",
    "ORBIFOLD_BLOCKS",
    "ptolemy_digon",
    "ptolemy_digon_quad",
    "ptolemy_monogon",
    "PTOLEMY_CONFIGURATIONS",
    "B2",
    "A3",
    "IV_TILDE_HALF",
    "IV_TILDE_TWO",
    "V12_TILDE_TWO",
    "HEXAGON",
    "WEIGHT_FIVE_PROBE",
    "AFFINE_A",
    "GAMMA_1_1",
    "TORUS_ONE_HOLE",
    "PANTS",
    "A3_PATH",
    "multi_point_orbifold",
    "MULTI_POINT_CASES",
]

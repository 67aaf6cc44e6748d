"""Combinatorial triangulations of weighted orbifolds.

A triangulation is a list of triangles, each a counterclockwise triple of arc
labels.  Gluing is implicit: the two slots carrying the same ordinary arc are
glued with reversed orientation.  Reduced triangle types:

* ``(a, b, c)`` ordinary triangle;
* ``(l, r, r)`` self-folded triangle with loop ``l`` and inner radius ``r``;
* ``(a, b, p)`` digon with an orbifold point, ``p`` the pending arc;
* ``(a, p, q)`` monogon with two orbifold points.

A pending arc occupies a single slot: the slot runs from its base marked
point to the orbifold point and back.  Arrows of the diagram go from a side
to its clockwise successor, which for a stored triple ``(s0, s1, s2)`` means
``s1 -> s0``, ``s2 -> s1`` and ``s0 -> s2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .blocks import OUTLET, PENDING, TEMPLATES, BlockDecomposition
from .core_matrix import Diagram, ExchangeMatrix, as_rows, matrices_for_weighted_diagram
from .diagram import canonical_labeling
from .errors import BoundaryArc, NonOrientableGluing, NotFlippable, UntriangulatedInput

ORDINARY, PENDING_ARC, BOUNDARY = "ordinary", "pending", "boundary"
HALF, TWO = Fraction(1, 2), Fraction(2)


@dataclass(frozen=True)
class OrbifoldSignature:
    """Topological type: genus, marked points per boundary component,
    punctures, and the weights of the orbifold points."""

    genus: int
    boundary: tuple[int, ...]
    punctures: int
    orbifold_points: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if any(c < 1 for c in self.boundary):
            raise UntriangulatedInput("every boundary component needs a marked point")
        pts = tuple(sorted(Fraction(w) for w in self.orbifold_points))
        if any(w not in (HALF, TWO) for w in pts):
            raise UntriangulatedInput("orbifold weights must be 2 or 1/2")
        object.__setattr__(self, "boundary", tuple(sorted(self.boundary)))
        object.__setattr__(self, "orbifold_points", pts)

    @property
    def rank(self) -> int:
        """Number of arcs in a triangulation."""
        b = len(self.boundary)
        return 6 * self.genus + 3 * b + 3 * self.punctures + 2 * len(self.orbifold_points) + sum(self.boundary) - 6

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "boundary": list(self.boundary),
            "punctures": self.punctures,
            "orbifold_points": [str(w) for w in self.orbifold_points],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "OrbifoldSignature":
        return cls(
            int(data.get("genus", 0)),
            tuple(int(x) for x in data.get("boundary", ())),
            int(data.get("punctures", 0)),
            tuple(Fraction(str(x)) for x in data.get("orbifold_points", ())),
        )


def _min_rotation(tri: tuple[str, ...]) -> tuple[str, ...]:
    return min(tri[i:] + tri[:i] for i in range(len(tri)))


@dataclass(frozen=True)
class Triangulation:
    """Triangulated weighted orbifold.

    ``arcs`` lists ``(label, kind)``; interior arcs (ordinary and pending) in
    this order index the rows of the signed adjacency matrix.  ``pending_at``
    sends each pending arc to its orbifold point, whose weight is
    ``orbifold_weights[point]``.
    """

    arcs: tuple[tuple[str, str], ...]
    triangles: tuple[tuple[str, str, str], ...]
    pending_at: Mapping[str, int] = field(default_factory=dict)
    orbifold_weights: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        arcs = tuple((str(a), str(k)) for a, k in self.arcs)
        tris = tuple(sorted(_min_rotation(tuple(str(x) for x in t)) for t in self.triangles))
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "triangles", tris)
        object.__setattr__(self, "pending_at", {str(a): int(p) for a, p in dict(self.pending_at).items()})
        object.__setattr__(self, "orbifold_weights", tuple(Fraction(w) for w in self.orbifold_weights))
        self._validate()

    def __hash__(self) -> int:
        return hash((self.arcs, self.triangles, tuple(sorted(self.pending_at.items())), self.orbifold_weights))

    # structure -------------------------------------------------------
    def _validate(self) -> None:
        kinds = dict(self.arcs)
        if len(kinds) != len(self.arcs):
            raise UntriangulatedInput("duplicate arc labels")
        if any(k not in (ORDINARY, PENDING_ARC, BOUNDARY) for k in kinds.values()):
            raise UntriangulatedInput("unknown arc kind")
        count = {a: 0 for a in kinds}
        for t in self.triangles:
            if len(t) != 3:
                raise UntriangulatedInput(f"triangle {t} does not have three sides")
            for x in t:
                if x not in count:
                    raise UntriangulatedInput(f"unknown arc {x}")
                count[x] += 1
            if len(set(t)) == 1:
                raise UntriangulatedInput(f"degenerate triangle {t}")
            if len(set(t)) == 2:
                rep = next(x for x in t if t.count(x) == 2)
                if kinds[rep] != ORDINARY:
                    raise UntriangulatedInput(f"self-folded triangle {t} needs an ordinary radius")
        for a, k in kinds.items():
            want = 2 if k == ORDINARY else 1
            if count[a] != want:
                raise UntriangulatedInput(f"arc {a} ({k}) lies in {count[a]} triangle slots, expected {want}")
        pend = [a for a, k in kinds.items() if k == PENDING_ARC]
        if sorted(self.pending_at) != sorted(pend):
            raise UntriangulatedInput("pending_at must list exactly the pending arcs")
        pts = list(self.pending_at.values())
        if len(set(pts)) != len(pts):
            raise UntriangulatedInput("two pending arcs end at the same orbifold point")
        if sorted(pts) != list(range(len(self.orbifold_weights))):
            raise UntriangulatedInput("orbifold points must be 0..k-1, one pending arc each")
        if any(w not in (HALF, TWO) for w in self.orbifold_weights):
            raise UntriangulatedInput("orbifold weights must be 2 or 1/2")
        for t in self.triangles:
            if sum(1 for x in t if kinds[x] == PENDING_ARC) == 3:
                raise UntriangulatedInput(f"triangle {t} has no non-pending side")

    @property
    def kinds(self) -> dict[str, str]:
        return dict(self.arcs)

    @property
    def interior_arcs(self) -> list[str]:
        return [a for a, k in self.arcs if k != BOUNDARY]

    @property
    def boundary_arcs(self) -> list[str]:
        return [a for a, k in self.arcs if k == BOUNDARY]

    def slots(self, arc: str) -> list[tuple[int, int]]:
        return [(t, i) for t, tri in enumerate(self.triangles) for i, x in enumerate(tri) if x == arc]

    def self_folded(self) -> dict[str, str]:
        """Map radius -> loop for every self-folded triangle."""
        out = {}
        for t in self.triangles:
            if len(set(t)) == 2:
                r = next(x for x in t if t.count(x) == 2)
                loop = next(x for x in t if x != r)
                out[r] = loop
        return out

    def arc_weight(self, arc: str) -> Fraction:
        if self.kinds[arc] == PENDING_ARC:
            return self.orbifold_weights[self.pending_at[arc]]
        return Fraction(1)

    @property
    def regular_weight(self) -> int:
        return 2 if HALF in self.orbifold_weights else 1

    def with_weights(self, weights: Sequence[Fraction]) -> "Triangulation":
        return Triangulation(self.arcs, self.triangles, self.pending_at, tuple(weights))

    # topology --------------------------------------------------------
    def signature(self) -> OrbifoldSignature:
        """Genus, boundary, punctures and orbifold points from the gluing."""
        kinds = self.kinds
        parent = {(t, i): (t, i) for t in range(len(self.triangles)) for i in range(3)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            a, b = find(a), find(b)
            if a != b:
                parent[max(a, b)] = min(a, b)

        tri_parent = list(range(len(self.triangles)))

        def tfind(x):
            while tri_parent[x] != x:
                x = tri_parent[x]
            return x

        for a, k in self.arcs:
            sl = self.slots(a)
            if k == ORDINARY:
                (t1, i1), (t2, i2) = sl
                union((t1, i1), (t2, (i2 + 1) % 3))
                union((t1, (i1 + 1) % 3), (t2, i2))
                r1, r2 = tfind(t1), tfind(t2)
                if r1 != r2:
                    tri_parent[max(r1, r2)] = min(r1, r2)
            elif k == PENDING_ARC:
                (t, i), = sl
                union((t, i), (t, (i + 1) % 3))
        if len({tfind(t) for t in range(len(self.triangles))}) > 1:
            raise UntriangulatedInput("triangulation is not connected")
        classes = {find(c) for c in parent}
        bd_edges = []
        for a in self.boundary_arcs:
            (t, i), = self.slots(a)
            bd_edges.append((find((t, i)), find((t, (i + 1) % 3))))
        on_boundary = {x for e in bd_edges for x in e}
        comp = {x: x for x in on_boundary}

        def cfind(x):
            while comp[x] != x:
                x = comp[x]
            return x

        for x, y in bd_edges:
            rx, ry = cfind(x), cfind(y)
            if rx != ry:
                comp[max(rx, ry)] = min(rx, ry)
        sizes: dict = {}
        for x in on_boundary:
            sizes[cfind(x)] = sizes.get(cfind(x), 0) + 1
        b = len(sizes)
        punctures = len(classes) - len(on_boundary)
        V = len(classes) + len(self.orbifold_weights)
        chi = V - len(self.arcs) + len(self.triangles)
        twice_g = 2 - b - chi
        if twice_g < 0 or twice_g % 2:
            raise NonOrientableGluing("gluing does not produce an orientable surface")
        return OrbifoldSignature(twice_g // 2, tuple(sizes.values()), punctures, self.orbifold_weights)

    # diagram and matrix ----------------------------------------------
    def arrow_counts(self, include_boundary: bool = False) -> dict[tuple[str, str], int]:
        """Net number of arrows x -> y, with radii copying their loop's arrows."""
        kinds = self.kinds
        sf = self.self_folded()
        pre: dict[str, list[str]] = {}
        for a, k in self.arcs:
            if k == BOUNDARY and not include_boundary:
                continue
            pre.setdefault(sf.get(a, a), []).append(a)
        net: dict[tuple[str, str], int] = {}
        for tri in self.triangles:
            if len(set(tri)) < 3:
                continue
            for i in range(3):
                src, dst = tri[(i + 1) % 3], tri[i]
                for x in pre.get(src, ()):
                    for y in pre.get(dst, ()):
                        net[(x, y)] = net.get((x, y), 0) + 1
                        net[(y, x)] = net.get((y, x), 0) - 1
        return {k: v for k, v in net.items() if v}

    def weighted_diagram(self, include_boundary: bool = False) -> tuple[Diagram, list[str]]:
        kinds = self.kinds
        labels = [a for a, k in self.arcs if k != BOUNDARY or include_boundary]
        pos = {a: i for i, a in enumerate(labels)}
        w = self.regular_weight
        d = [int(self.arc_weight(a) * w) for a in labels]
        edges = {}
        for (x, y), s in self.arrow_counts(include_boundary).items():
            if s <= 0:
                continue
            npend = (kinds[x] == PENDING_ARC) + (kinds[y] == PENDING_ARC)
            if npend == 0:
                if s > 2:
                    raise UntriangulatedInput(f"{s} parallel arrows between {x} and {y}")
                weight = s * s
            else:
                if s != 1:
                    raise UntriangulatedInput(f"multiple arrows at pending arc between {x} and {y}")
                weight = 2 if npend == 1 else 4
            edges[(pos[x], pos[y])] = weight
        return Diagram(len(labels), edges, tuple(d)), labels


def signed_adjacency(T: Triangulation, weights: Sequence[Fraction] | None = None) -> ExchangeMatrix:
    """Exchange matrix of a triangulation, rows in the order of ``T.interior_arcs``.

    ``weights`` overrides the orbifold weights stored in ``T``.
    """
    if weights is not None:
        T = T.with_weights(weights)
    D, _ = T.weighted_diagram()
    if D.n == 0:
        return ExchangeMatrix(())
    return matrices_for_weighted_diagram(D)


def extended_signed_adjacency(T: Triangulation) -> tuple[tuple[tuple[int, ...], ...], list[str]]:
    """Interior rows followed by one frozen row per boundary segment.

    Columns are the interior arcs.  Returns the rows and the row labels.
    """
    D, labels = T.weighted_diagram(include_boundary=True)
    full = matrices_for_weighted_diagram(D)
    kinds = T.kinds
    inner = [i for i, a in enumerate(labels) if kinds[a] != BOUNDARY]
    outer = [i for i, a in enumerate(labels) if kinds[a] == BOUNDARY]
    rows = tuple(tuple(full.b[i][j] for j in inner) for i in inner + outer)
    return rows, [labels[i] for i in inner + outer]


def flip_kind(T: Triangulation, arc: str) -> str:
    kinds = T.kinds
    if arc not in kinds:
        raise KeyError(arc)
    if kinds[arc] == BOUNDARY:
        raise BoundaryArc(f"{arc} is a boundary segment")
    if kinds[arc] == PENDING_ARC:
        (t, _), = T.slots(arc)
        npend = sum(1 for x in T.triangles[t] if kinds[x] == PENDING_ARC)
        return "digon-pending" if npend == 1 else "monogon-two-pending"
    (t1, _), (t2, _) = T.slots(arc)
    if t1 == t2:
        raise NotFlippable(f"{arc} is the inner edge of a self-folded triangle")
    return "quadrilateral"


def _rotate_to(tri: tuple[str, ...], i: int) -> tuple[str, ...]:
    return tri[i:] + tri[:i]


def flip(T: Triangulation, arc: str | int) -> Triangulation:
    """Flip an interior arc.  The new arc keeps the old label.

    An integer selects the arc by its position among the interior arcs.
    """
    if isinstance(arc, int):
        arc = T.interior_arcs[arc]
    kind = flip_kind(T, arc)
    tris = list(T.triangles)
    if kind != "quadrilateral":
        (t, i), = T.slots(arc)
        _, x, y = _rotate_to(tris[t], i)
        tris[t] = (arc, y, x)
    else:
        (t1, i1), (t2, i2) = T.slots(arc)
        _, a, b = _rotate_to(tris[t1], i1)
        _, c, d = _rotate_to(tris[t2], i2)
        tris[t1] = (arc, b, c)
        tris[t2] = (arc, d, a)
    return Triangulation(T.arcs, tuple(tris), T.pending_at, T.orbifold_weights)


def flip_sequence(T: Triangulation, seq: Iterable[str | int]) -> Triangulation:
    for a in seq:
        T = flip(T, a)
    return T


def is_flippable(T: Triangulation, arc: str) -> bool:
    try:
        flip_kind(T, arc)
    except (NotFlippable, BoundaryArc):
        return False
    return True


def triangulation_key(T: Triangulation) -> bytes:
    """Isomorphism-invariant key with boundary segments kept distinct.

    Two triangulations of the same orbifold share a key exactly when a
    relabeling of interior arcs, fixing every boundary segment, carries one
    to the other.
    """
    kinds = T.kinds
    nodes: list[str] = []
    index: dict[object, int] = {}
    for a, k in T.arcs:
        index[("arc", a)] = len(nodes)
        if k == BOUNDARY:
            nodes.append("b:" + a)
        elif k == PENDING_ARC:
            nodes.append("p:" + str(T.arc_weight(a)))
        else:
            nodes.append("o")
    edges: dict[tuple[int, int], int] = {}
    for t, tri in enumerate(T.triangles):
        base = len(nodes)
        nodes.extend(["s", "s", "s"])
        for i, x in enumerate(tri):
            edges[(base + i, base + (i + 1) % 3)] = 1
            edges[(base + i, index[("arc", x)])] = 2
    cert, _ = canonical_labeling(len(nodes), nodes, edges)
    colors, es = cert
    return ("|".join(colors) + "#" + ";".join(f"{i},{j},{w}" for i, j, w in es)).encode()


@dataclass
class FlipGraph:
    nodes: list[Triangulation]
    edges: list[tuple[int, int]]
    capped: bool

    def __len__(self) -> int:
        return len(self.nodes)


def flip_graph(T0: Triangulation, radius_cap: int = 12, count_cap: int = 10**5) -> FlipGraph:
    """Breadth-first search over flips, deduplicated by :func:`triangulation_key`."""
    keys = {triangulation_key(T0): 0}
    nodes = [T0]
    edges: set[tuple[int, int]] = set()
    frontier = [0]
    capped = False
    for _ in range(radius_cap):
        nxt = []
        for u in frontier:
            T = nodes[u]
            for a in T.interior_arcs:
                if not is_flippable(T, a):
                    continue
                T2 = flip(T, a)
                k = triangulation_key(T2)
                v = keys.get(k)
                if v is None:
                    if len(nodes) >= count_cap:
                        capped = True
                        continue
                    v = len(nodes)
                    keys[k] = v
                    nodes.append(T2)
                    nxt.append(v)
                if u != v:
                    edges.add((min(u, v), max(u, v)))
        frontier = nxt
        if not frontier:
            break
    else:
        if frontier:
            capped = True
    return FlipGraph(nodes, sorted(edges), capped)


# gluing elementary pieces -----------------------------------------------------

# Triangles of each elementary piece in terms of template vertices; "~" marks
# a fresh boundary segment.
_PIECES: dict[str, list[tuple[object, object, object]]] = {
    "I": [(1, 0, "~")],
    "II": [(0, 2, 1)],
    "IIIa": [(0, 1, "~"), (1, 2, 2)],
    "IIIb": [(0, 2, "~"), (0, 1, 1)],
    "IV": [(0, 2, 1), (2, 3, 3)],
    "V": [(0, 2, 1), (1, 4, 4), (2, 3, 3)],
    "IIIa~": [(0, 1, "~")],
    "IIIb~": [(0, 1, "~")],
    "IV~": [(0, 2, 1)],
    "V1~": [(0, 2, 1), (1, 3, 3)],
    "V2~": [(2, 1, 0), (1, 3, 3)],
    "V12~": [(0, 2, 1)],
    "VI~": [(0, 4, 1), (0, 2, 2), (1, 3, 3)],
    "single": [(0, "~", "~"), (0, "~", "~")],
}


def arc_label(v: int) -> str:
    return str(v + 1)


def orbifold_of_decomposition(dec: BlockDecomposition) -> tuple[OrbifoldSignature, Triangulation]:
    """Glue the elementary pieces of a decomposition into a triangulation.

    Matched outlets become shared arcs; every unmatched outlet is closed
    with an ear, a triangle whose other two sides are boundary segments.
    Arc ``str(v + 1)`` corresponds to diagram vertex ``v``.
    """
    tris: list[tuple[str, str, str]] = []
    nb = 0

    def fresh() -> str:
        nonlocal nb
        nb += 1
        return f"b{nb}"

    uses: dict[int, int] = {}
    pend: dict[int, None] = {}
    for pl in dec.blocks:
        tpl = TEMPLATES[pl.kind]
        for tri in _PIECES[pl.kind]:
            tris.append(tuple(fresh() if x == "~" else arc_label(pl.vertices[x]) for x in tri))  # type: ignore[arg-type]
        for t, v in enumerate(pl.vertices):
            if tpl.roles[t] == OUTLET:
                uses[v] = uses.get(v, 0) + 1
            elif tpl.roles[t] == PENDING:
                pend[v] = None
    for v in sorted(uses):
        if uses[v] == 1:
            tris.append((arc_label(v), fresh(), fresh()))
        elif uses[v] != 2:
            raise NonOrientableGluing(f"outlet {v + 1} used {uses[v]} times")
    pending = sorted(pend)
    arcs = [(arc_label(v), PENDING_ARC if v in pend else ORDINARY) for v in range(dec.n)]
    arcs += [(f"b{i}", BOUNDARY) for i in range(1, nb + 1)]
    pending_at = {arc_label(v): i for i, v in enumerate(pending)}
    weights = tuple(dec.orbifold_weights.get(v, TWO) for v in pending)
    T = Triangulation(tuple(arcs), tuple(tris), pending_at, weights)
    return T.signature(), T


__all__ = [
    "ORDINARY",
    "PENDING_ARC",
    "BOUNDARY",
    "OrbifoldSignature",
    "Triangulation",
    "FlipGraph",
    "signed_adjacency",
    "extended_signed_adjacency",
    "flip",
    "flip_kind",
    "flip_sequence",
    "is_flippable",
    "flip_graph",
    "triangulation_key",
    "orbifold_of_decomposition",
]

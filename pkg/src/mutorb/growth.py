"""Mutation classes, mutation-finiteness and growth of exchange graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .blocks import find_s_decomposition
from .cluster_engine import mutate_extended, principal_seed
from .core_matrix import Diagram, ExchangeMatrix, diagram_of
from .diagram import canonical_form, canonical_tuple, mutate_diagram
from .errors import ClassEnumerationExceeded, NonRealizable

FINITE, LINEAR, QUADRATIC, CUBIC, EXPONENTIAL = "finite", "linear", "quadratic", "cubic", "exponential"
UNCLASSIFIED = "exponential or exceptional - unclassified"
DEFAULT_CAP = 10**5


@dataclass
class MutationClass:
    """Canonical keys of a mutation class, in discovery order.

    ``complete`` is False when the cap stopped the search; ``reason`` then
    says why.
    """

    keys: list[bytes]
    representatives: list[Diagram]
    complete: bool
    reason: str = ""

    @property
    def size(self) -> int | str:
        return len(self.keys) if self.complete else "exceeded"

    def __len__(self) -> int:
        return len(self.keys)


def _as_diagram(D: Diagram | ExchangeMatrix | Iterable[Iterable[object]]) -> Diagram:
    if isinstance(D, Diagram):
        return D
    B = ExchangeMatrix.of(D)
    return diagram_of(B).with_vertex_weights(None if B.is_skew_symmetric() else B.d)


def _heavy(D: Diagram) -> bool:
    return D.n >= 3 and any(w > 4 for w in D.edges.values())


def enumerate_mutation_class(
    D: Diagram | ExchangeMatrix | Iterable[Iterable[object]],
    cap: int = DEFAULT_CAP,
    stop_on_heavy: bool = False,
) -> MutationClass:
    """Breadth-first closure under mutation, modulo isomorphism.

    With ``stop_on_heavy`` the search ends as soon as a diagram with at
    least three vertices carries an edge of weight above 4; such a class
    is infinite.
    """
    D0 = _as_diagram(D)
    first = canonical_tuple(D0)
    seen = {first: 0}
    reps = [D0]
    queue = deque([D0])
    if stop_on_heavy and _heavy(D0):
        return MutationClass([canonical_form(D0)], reps, False, "edge weight above 4")
    while queue:
        X = queue.popleft()
        for k in range(X.n):
            try:
                Y = mutate_diagram(X, k)
            except NonRealizable as exc:
                return MutationClass([canonical_form(R) for R in reps], reps, False, str(exc))
            key = canonical_tuple(Y)
            if key in seen:
                continue
            if len(seen) >= cap:
                return MutationClass([canonical_form(R) for R in reps], reps, False, f"more than {cap} diagrams")
            seen[key] = len(reps)
            reps.append(Y)
            if stop_on_heavy and _heavy(Y):
                return MutationClass([canonical_form(R) for R in reps], reps, False, "edge weight above 4")
            queue.append(Y)
    return MutationClass([canonical_form(R) for R in reps], reps, True)


def is_mutation_finite(D: Diagram | ExchangeMatrix | Iterable[Iterable[object]], cap: int = DEFAULT_CAP) -> bool:
    """True iff the class closes under ``cap`` with no edge weight above 4 (rank >= 3)."""
    return enumerate_mutation_class(D, cap, stop_on_heavy=True).complete


# growth -----------------------------------------------------------------


@dataclass
class GrowthReport:
    classification: str
    class_size: int | str
    ball_sizes: list[int]
    surface: dict | None = None

    def to_json(self) -> dict:
        return {
            "classification": self.classification,
            "class_size": self.class_size,
            "ball_sizes": self.ball_sizes,
            "surface": self.surface,
        }

    def __str__(self) -> str:
        lines = [self.classification, f"class size: {self.class_size}"]
        if self.ball_sizes:
            lines.append("ball sizes: " + ",".join(str(x) for x in self.ball_sizes))
        return "\n".join(lines)


def growth_of_signature(genus: int, boundary: int, special: int) -> str:
    """Growth class of an orbifold given genus, boundary count and punctures plus orbifold points."""
    if genus == 0 and boundary == 1:
        if special <= 1:
            return FINITE
        if special == 2:
            return LINEAR
    if genus == 0 and boundary == 2:
        if special == 0:
            return LINEAR
        if special == 1:
            return QUADRATIC
    if genus == 0 and boundary == 3 and special == 0:
        return CUBIC
    return EXPONENTIAL


def _component_signatures(D: Diagram):
    from .orbifold import orbifold_of_decomposition

    dec = find_s_decomposition(D)
    if dec is None:
        return None
    from .blocks import BlockDecomposition, Placement, _components

    out = []
    for comp in _components(D):
        pos = {v: i for i, v in enumerate(comp)}
        blocks = tuple(
            Placement(pl.kind, tuple(pos[v] for v in pl.vertices)) for pl in dec.blocks if pl.vertices[0] in pos
        )
        ow = {pos[v]: w for v, w in dec.orbifold_weights.items() if v in pos}
        sig, _ = orbifold_of_decomposition(BlockDecomposition(len(comp), blocks, ow))
        out.append(sig)
    return out


_ORDER = [FINITE, LINEAR, QUADRATIC, CUBIC, EXPONENTIAL]


def classify_growth(
    D: Diagram | ExchangeMatrix | Iterable[Iterable[object]], cap: int = DEFAULT_CAP
) -> str:
    """Growth class of the cluster algebra of an s-decomposable diagram.

    The orbifold is read off a block decomposition; its genus, boundary
    components and number of punctures plus orbifold points fix the class.
    A disconnected diagram grows like its fastest component.
    Raises :class:`ClassEnumerationExceeded` if the mutation class cannot
    be enumerated within ``cap`` (the class of an s-decomposable diagram is
    always finite).
    """
    D0 = _as_diagram(D)
    sigs = _component_signatures(D0)
    if sigs is None:
        return UNCLASSIFIED
    if not enumerate_mutation_class(D0, cap).complete:
        raise ClassEnumerationExceeded(f"mutation class larger than {cap}")
    worst = 0
    for sig in sigs:
        special = sig.punctures + len(sig.orbifold_points)
        g = growth_of_signature(sig.genus, len(sig.boundary), special)
        worst = max(worst, _ORDER.index(g))
    return _ORDER[worst]


def surface_of(D: Diagram | ExchangeMatrix | Iterable[Iterable[object]]) -> list[dict] | None:
    sigs = _component_signatures(_as_diagram(D))
    return None if sigs is None else [s.to_json() for s in sigs]


def _seed_key_unlabeled(rows):
    n = len(rows[0])
    order = sorted(range(n), key=lambda j: tuple(rows[i][j] for i in range(n, 2 * n)))
    return tuple(tuple(rows[i][j] for j in order) for i in order) + tuple(
        tuple(rows[n + i][j] for j in order) for i in range(n)
    )


def ball_sizes(
    B: ExchangeMatrix | Diagram | Iterable[Iterable[object]],
    radius: int,
    unlabeled: bool = False,
    cap: int = 2 * 10**6,
) -> list[int]:
    """Cumulative numbers of distinct seeds within ``radius`` mutations.

    Seeds are tracked through their principal-coefficient extended
    matrices, which determine them.  ``unlabeled`` identifies seeds that
    differ by a relabeling.  Stops early if more than ``cap`` seeds appear.
    """
    if isinstance(B, Diagram):
        from .core_matrix import matrices_for_weighted_diagram
        from .unfolding import diagram_to_skew

        B = matrices_for_weighted_diagram(B) if B.vertex_weights is not None else ExchangeMatrix(diagram_to_skew(B))
    B = ExchangeMatrix.of(B)
    start = principal_seed(B)
    key = _seed_key_unlabeled if unlabeled else (lambda r: r)
    seen = {key(start.rows)}
    frontier = [(start, -1)]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for Bt, last in frontier:
            for k in range(B.n):
                if k == last:
                    continue
                child = mutate_extended(Bt, k)
                ck = key(child.rows)
                if ck not in seen:
                    seen.add(ck)
                    nxt.append((child, k))
        frontier = nxt
        sizes.append(len(seen))
        if len(seen) > cap:
            break
    return sizes


def growth_report(D: Diagram | ExchangeMatrix | Iterable[Iterable[object]], radius: int = 0, cap: int = DEFAULT_CAP) -> GrowthReport:
    D0 = _as_diagram(D)
    cls = classify_growth(D0, cap)
    mc = enumerate_mutation_class(D0, cap)
    balls = ball_sizes(D0, radius, unlabeled=True) if radius else []
    surf = surface_of(D0)
    return GrowthReport(cls, mc.size, balls, surf[0] if surf and len(surf) == 1 else None)


__all__ = [
    "FINITE",
    "LINEAR",
    "QUADRATIC",
    "CUBIC",
    "EXPONENTIAL",
    "UNCLASSIFIED",
    "MutationClass",
    "enumerate_mutation_class",
    "is_mutation_finite",
    "growth_of_signature",
    "classify_growth",
    "surface_of",
    "ball_sizes",
    "GrowthReport",
    "growth_report",
]

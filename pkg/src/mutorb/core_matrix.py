"""Exact integer exchange matrices, mutation, symmetrizers and diagrams.

Entries are plain Python integers, so mutation never overflows no matter
how large the entries grow along a sequence.  Indices are 0-based here; the
command line converts from the 1-based notation used by users.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Mapping, Sequence

from .errors import InvalidMatrix, NotRealizable, NotSymmetrizable, ShapeMismatch

Rows = tuple[tuple[int, ...], ...]


def _as_int(x: object) -> int:
    if isinstance(x, bool):
        raise InvalidMatrix(f"boolean entry {x!r}")
    try:
        v = int(x)  # type: ignore[call-overload]
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"non-integer entry {x!r}") from exc
    if v != x:
        raise InvalidMatrix(f"non-integer entry {x!r}")
    return v


def as_rows(data: Iterable[Iterable[object]]) -> Rows:
    """Convert nested sequences (lists, tuples, numpy arrays) to integer rows."""
    rows = tuple(tuple(_as_int(x) for x in row) for row in data)
    if rows and len({len(r) for r in rows}) != 1:
        raise InvalidMatrix("ragged rows")
    return rows


def mutate_rows(rows: Rows, k: int) -> Rows:
    """Matrix mutation at column ``k`` applied to every row of an m x n array.

    Works for square exchange matrices and for extended matrices whose
    extra rows carry coefficients or shear coordinates.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for {n} columns")
    row_k = rows[k]
    out = []
    for i in range(m):
        r = rows[i]
        if i == k:
            out.append(tuple(-x for x in r))
            continue
        bik = r[k]
        if bik == 0:
            out.append(r)
            continue
        new = list(r)
        for j in range(n):
            if j == k:
                new[j] = -bik
                continue
            bkj = row_k[j]
            # (|b_ik| b_kj + b_ik |b_kj|) / 2 is nonzero only when signs agree
            if bik > 0 and bkj > 0:
                new[j] = r[j] + bik * bkj
            elif bik < 0 and bkj < 0:
                new[j] = r[j] - bik * bkj
        out.append(tuple(new))
    return tuple(out)


def _check_sign_condition(rows: Rows) -> None:
    n = len(rows)
    for i in range(n):
        if rows[i][i] != 0:
            raise InvalidMatrix(f"nonzero diagonal entry at ({i + 1},{i + 1})")
        for j in range(i + 1, n):
            a, b = rows[i][j], rows[j][i]
            if (a == 0) != (b == 0) or (a != 0 and (a > 0) == (b > 0)):
                raise InvalidMatrix(
                    f"sign condition fails at ({i + 1},{j + 1}): b_ij={a}, b_ji={b}"
                )


def _components(rows: Rows) -> list[list[int]]:
    n = len(rows)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in range(n):
                if not seen[u] and rows[v][u] != 0:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _symmetrizer(rows: Rows) -> tuple[int, ...]:
    n = len(rows)
    d: list[Fraction | None] = [None] * n
    for comp in _components(rows):
        root = comp[0]
        d[root] = Fraction(1)
        queue = [root]
        for v in queue:
            for u in range(n):
                if rows[v][u] != 0 and d[u] is None:
                    # b_vu d_u = -b_uv d_v
                    d[u] = Fraction(-rows[u][v], rows[v][u]) * d[v]
                    queue.append(u)
        den = lcm(*(x.denominator for x in (d[v] for v in comp)))  # type: ignore[union-attr]
        ints = [int(d[v] * den) for v in comp]  # type: ignore[operator]
        g = gcd(*ints)
        for v, x in zip(comp, ints):
            d[v] = Fraction(x // g)
    out = tuple(int(x) for x in d)  # type: ignore[arg-type]
    for i in range(n):
        for j in range(n):
            if rows[i][j] * out[j] != -rows[j][i] * out[i]:
                raise NotSymmetrizable(
                    f"b_ij d_j = -b_ji d_i has no positive solution (pair {i + 1},{j + 1})"
                )
    return out


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetrizable integer n x n matrix, validated on construction."""

    b: Rows
    _d: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        rows = as_rows(self.b)
        if any(len(r) != len(rows) for r in rows):
            raise InvalidMatrix("exchange matrix must be square")
        _check_sign_condition(rows)
        object.__setattr__(self, "b", rows)
        object.__setattr__(self, "_d", _symmetrizer(rows))

    @classmethod
    def of(cls, data: "ExchangeMatrix | Iterable[Iterable[object]]") -> "ExchangeMatrix":
        return data if isinstance(data, ExchangeMatrix) else cls(as_rows(data))

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def d(self) -> tuple[int, ...]:
        return self._d

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.b[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.b]

    def is_skew_symmetric(self) -> bool:
        return all(x == 1 for x in self._d)

    def permuted(self, perm: Sequence[int]) -> "ExchangeMatrix":
        """Matrix with new index ``a`` standing for old index ``perm[a]``."""
        return ExchangeMatrix(tuple(tuple(self.b[p][q] for q in perm) for p in perm))

    def submatrix(self, idx: Sequence[int]) -> "ExchangeMatrix":
        return self.permuted(idx)

    def __str__(self) -> str:
        return format_rows(self.b)


def format_rows(rows: Rows) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in rows) + "]"


def mutate_matrix(B: ExchangeMatrix | Iterable[Iterable[object]], k: int) -> ExchangeMatrix:
    """Mutation of an exchange matrix at index ``k`` (0-based)."""
    B = ExchangeMatrix.of(B)
    if not 0 <= k < B.n:
        raise IndexError(f"mutation index {k} out of range for n={B.n}")
    out = ExchangeMatrix.__new__(ExchangeMatrix)
    object.__setattr__(out, "b", mutate_rows(B.b, k))
    object.__setattr__(out, "_d", B.d)
    return out


def mutate_sequence(B: ExchangeMatrix | Iterable[Iterable[object]], seq: Iterable[int]) -> ExchangeMatrix:
    B = ExchangeMatrix.of(B)
    for k in seq:
        B = mutate_matrix(B, k)
    return B


def compute_symmetrizer(B: ExchangeMatrix | Iterable[Iterable[object]]) -> tuple[int, ...]:
    """Minimal positive symmetrizer, gcd one on each connected component."""
    if isinstance(B, ExchangeMatrix):
        return B.d
    rows = as_rows(B)
    if any(len(r) != len(rows) for r in rows):
        raise ShapeMismatch("matrix must be square")
    _check_sign_condition(rows)
    return _symmetrizer(rows)


@dataclass(frozen=True)
class Diagram:
    """Directed graph on vertices 0..n-1 with positive integer edge weights.

    ``edges`` maps an ordered pair ``(i, j)`` to the weight of the edge
    directed from ``i`` to ``j``.  At most one edge joins two vertices.
    ``vertex_weights`` is optional; a diagram carrying it is a weighted
    diagram in the sense used throughout the package.
    """

    n: int
    edges: Mapping[tuple[int, int], int]
    vertex_weights: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        clean: dict[tuple[int, int], int] = {}
        for (i, j), w in dict(self.edges).items():
            i, j, w = int(i), int(j), int(w)
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InvalidMatrix(f"edge ({i + 1},{j + 1}) outside vertex range")
            if i == j:
                raise InvalidMatrix(f"loop at vertex {i + 1}")
            if w <= 0:
                raise InvalidMatrix(f"nonpositive weight on edge ({i + 1},{j + 1})")
            if (j, i) in clean:
                raise InvalidMatrix(f"two edges between {i + 1} and {j + 1}")
            clean[(i, j)] = w
        object.__setattr__(self, "edges", dict(sorted(clean.items())))
        if self.vertex_weights is not None:
            vw = tuple(int(x) for x in self.vertex_weights)
            if len(vw) != self.n or any(x <= 0 for x in vw):
                raise InvalidMatrix("vertex weights must be n positive integers")
            object.__setattr__(self, "vertex_weights", vw)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.edges.items()), self.vertex_weights))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.n, self.edges, self.vertex_weights) == (
            other.n,
            other.edges,
            other.vertex_weights,
        )

    @property
    def weighted(self) -> bool:
        return self.vertex_weights is not None

    def signed(self, i: int, j: int) -> int:
        """Weight of i->j, negated weight of j->i, zero when no edge."""
        w = self.edges.get((i, j))
        if w is not None:
            return w
        w = self.edges.get((j, i))
        return -w if w is not None else 0

    def weight(self, i: int, j: int) -> int:
        return abs(self.signed(i, j))

    def neighbors(self, v: int) -> list[int]:
        return sorted({j for (i, j) in self.edges if i == v} | {i for (i, j) in self.edges if j == v})

    def edge_list(self) -> list[tuple[int, int, int]]:
        return [(i, j, w) for (i, j), w in self.edges.items()]

    def unweighted(self) -> "Diagram":
        return Diagram(self.n, self.edges)

    def with_vertex_weights(self, d: Sequence[int] | None) -> "Diagram":
        return Diagram(self.n, self.edges, None if d is None else tuple(d))

    def induced(self, vertices: Sequence[int]) -> "Diagram":
        """Full subdiagram on ``vertices``, renumbered in the given order."""
        pos = {v: a for a, v in enumerate(vertices)}
        edges = {(pos[i], pos[j]): w for (i, j), w in self.edges.items() if i in pos and j in pos}
        vw = None if self.vertex_weights is None else tuple(self.vertex_weights[v] for v in vertices)
        return Diagram(len(vertices), edges, vw)

    def relabeled(self, perm: Sequence[int]) -> "Diagram":
        """Diagram in which old vertex ``v`` becomes ``perm[v]``."""
        edges = {(perm[i], perm[j]): w for (i, j), w in self.edges.items()}
        vw = None
        if self.vertex_weights is not None:
            tmp = [0] * self.n
            for v, x in enumerate(self.vertex_weights):
                tmp[perm[v]] = x
            vw = tuple(tmp)
        return Diagram(self.n, edges, vw)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n


WeightedDiagram = Diagram


def diagram_of(B: ExchangeMatrix | Iterable[Iterable[object]]) -> Diagram:
    """Weighted diagram of B: edge i->j of weight -b_ij b_ji when b_ij > 0."""
    B = ExchangeMatrix.of(B)
    edges = {}
    for i in range(B.n):
        for j in range(B.n):
            if B.b[i][j] > 0:
                edges[(i, j)] = -B.b[i][j] * B.b[j][i]
    return Diagram(B.n, edges, B.d)


def matrices_for_weighted_diagram(D: Diagram) -> ExchangeMatrix:
    """The unique exchange matrix with the given weighted diagram."""
    if D.vertex_weights is None:
        raise NotRealizable("vertex weights are required to recover the matrix")
    d = D.vertex_weights
    rows = [[0] * D.n for _ in range(D.n)]
    for (i, j), w in D.edges.items():
        num = w * d[i]
        if num % d[j]:
            raise NotRealizable(f"edge ({i + 1},{j + 1}): weight {w} incompatible with vertex weights")
        sq = num // d[j]
        bij = isqrt(sq)
        if bij * bij != sq or (bij * d[j]) % d[i]:
            raise NotRealizable(f"edge ({i + 1},{j + 1}): no integer entries for weight {w}")
        rows[i][j] = bij
        rows[j][i] = -(bij * d[j]) // d[i]
    B = ExchangeMatrix(as_rows(rows))
    if B.d != d:
        # the weights given may be a non-minimal multiple of the symmetrizer
        for comp in _components(B.b):
            ratio = {Fraction(d[v], B.d[v]) for v in comp}
            if len(ratio) != 1:
                raise NotRealizable("vertex weights are not a symmetrizer")
    return B


__all__ = [
    "ExchangeMatrix",
    "Diagram",
    "WeightedDiagram",
    "as_rows",
    "mutate_rows",
    "mutate_matrix",
    "mutate_sequence",
    "compute_symmetrizer",
    "diagram_of",
    "matrices_for_weighted_diagram",
    "format_rows",
]

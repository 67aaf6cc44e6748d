"""Symbolic seeds, tropical coefficients, extended matrices and audits.

Cluster variables are stored fully expanded as Laurent polynomials in the
initial cluster ``x_1..x_n`` followed by the coefficient variables
``q_1..q_m``.  Coefficients live in the tropical semifield over the q's and
are kept as integer exponent vectors.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .core_matrix import ExchangeMatrix, Rows, _check_sign_condition, as_rows, mutate_matrix, mutate_rows
from .errors import NotSDecomposable, ShapeMismatch
from .laurent import LaurentPoly


# tropical semifield ---------------------------------------------------


@dataclass(frozen=True, order=True)
class TropicalMonomial:
    """Laurent monomial in q_1..q_m; product adds exponents, sum takes minima."""

    exps: tuple[int, ...]

    @classmethod
    def one(cls, m: int) -> "TropicalMonomial":
        return cls((0,) * m)

    @classmethod
    def q(cls, i: int, m: int) -> "TropicalMonomial":
        return cls(tuple(1 if j == i else 0 for j in range(m)))

    def __mul__(self, other: "TropicalMonomial") -> "TropicalMonomial":
        return TropicalMonomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other: "TropicalMonomial") -> "TropicalMonomial":
        return TropicalMonomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> "TropicalMonomial":
        return TropicalMonomial(tuple(a * k for a in self.exps))

    def oplus(self, other: "TropicalMonomial") -> "TropicalMonomial":
        return TropicalMonomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def is_one(self) -> bool:
        return not any(self.exps)


def _normalized_pair(ratio: TropicalMonomial) -> tuple[TropicalMonomial, TropicalMonomial]:
    # p+ = y/(y+1), p- = 1/(y+1) in the tropical semifield
    return (
        TropicalMonomial(tuple(max(e, 0) for e in ratio.exps)),
        TropicalMonomial(tuple(max(-e, 0) for e in ratio.exps)),
    )


# seeds ----------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    """Cluster, coefficient pairs ``(p+_k, p-_k)`` and exchange matrix."""

    cluster: tuple[LaurentPoly, ...]
    coeffs: tuple[tuple[TropicalMonomial, TropicalMonomial], ...]
    B: ExchangeMatrix
    normalized: bool = True

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def m(self) -> int:
        return len(self.coeffs[0][0].exps) if self.coeffs else 0

    def cluster_set(self) -> frozenset[LaurentPoly]:
        return frozenset(self.cluster)

    def y(self, k: int) -> TropicalMonomial:
        """Coefficient ratio ``p+_k / p-_k``."""
        p, q = self.coeffs[k]
        return p / q

    def canonical_key(self) -> tuple:
        """Key equal for seeds that agree up to simultaneous relabeling."""
        order = sorted(range(self.n), key=lambda i: self.cluster[i].sort_key())
        return (
            tuple(self.cluster[i] for i in order),
            tuple(tuple(self.B.b[i][j] for j in order) for i in order),
            tuple(self.coeffs[i] for i in order),
        )


def initial_seed(
    B: ExchangeMatrix | Iterable[Iterable[object]],
    coeffs: Sequence[tuple[Sequence[int], Sequence[int]]] | None = None,
    normalized: bool = True,
) -> Seed:
    """Seed with cluster ``x_1..x_n``; ``coeffs`` gives exponent pairs or defaults to trivial."""
    B = ExchangeMatrix.of(B)
    n = B.n
    if coeffs is None:
        pairs = tuple((TropicalMonomial(()), TropicalMonomial(())) for _ in range(n))
    else:
        if len(coeffs) != n:
            raise ShapeMismatch(f"expected {n} coefficient pairs")
        pairs = tuple((TropicalMonomial(tuple(p)), TropicalMonomial(tuple(q))) for p, q in coeffs)
        if len({len(p.exps) for pair in pairs for p in pair}) > 1:
            raise ShapeMismatch("coefficient exponent vectors differ in length")
        if normalized:
            pairs = tuple(_normalized_pair(p / q) for p, q in pairs)
    m = len(pairs[0][0].exps) if pairs else 0
    nv = n + m
    cluster = tuple(LaurentPoly.var(i, nv) for i in range(n))
    return Seed(cluster, pairs, B, normalized)


def principal_coefficient_seed(B: ExchangeMatrix | Iterable[Iterable[object]]) -> Seed:
    """Seed with ``y_k = q_k``, i.e. ``p+_k = q_k`` and ``p-_k = 1``."""
    B = ExchangeMatrix.of(B)
    n = B.n
    pairs = [(tuple(1 if j == k else 0 for j in range(n)), (0,) * n) for k in range(n)]
    return initial_seed(B, pairs, normalized=True)


def _coef_poly(t: TropicalMonomial, n: int) -> LaurentPoly:
    return LaurentPoly.monomial((0,) * n + t.exps)


def exchange_binomials(s: Seed, k: int) -> tuple[LaurentPoly, LaurentPoly]:
    """The two terms ``p+_k prod x_j^[b_jk]+`` and ``p-_k prod x_j^[-b_jk]+``."""
    n, B = s.n, s.B
    plus_c, minus_c = s.coeffs[k]
    nv = n + s.m
    plus = _coef_poly(plus_c, n) if s.m else LaurentPoly.const(nv)
    minus = _coef_poly(minus_c, n) if s.m else LaurentPoly.const(nv)
    for j in range(n):
        b = B.b[j][k]
        if b > 0:
            plus = plus * s.cluster[j] ** b
        elif b < 0:
            minus = minus * s.cluster[j] ** (-b)
    return plus, minus


def mutate_seed(s: Seed, k: int) -> Seed:
    """Seed mutation in direction ``k`` (0-based).

    The new variable comes from exact Laurent division; a remainder raises
    :class:`NonLaurentDivision`.  Coefficient pairs follow the ratio rule
    ``y'_i = y_i * (p+_k)^b_ki`` for ``b_ki >= 0`` and
    ``y'_i = y_i * (p-_k)^b_ki`` for ``b_ki <= 0``.  Normalized seeds are
    rescaled to ``p+ (+) p- = 1``; otherwise the factor multiplies ``p+_i``
    or divides ``p-_i``.
    """
    if not 0 <= k < s.n:
        raise IndexError(f"mutation index {k} out of range for n={s.n}")
    plus, minus = exchange_binomials(s, k)
    new_x = (plus + minus).exact_div(s.cluster[k])
    cluster = s.cluster[:k] + (new_x,) + s.cluster[k + 1 :]
    pk, mk = s.coeffs[k]
    pairs = []
    for i, (p, q) in enumerate(s.coeffs):
        if i == k:
            pairs.append((mk, pk))
            continue
        b = s.B.b[k][i]
        if s.normalized:
            ratio = p / q
            if b > 0:
                ratio = ratio * pk ** b
            elif b < 0:
                ratio = ratio * mk ** b
            pairs.append(_normalized_pair(ratio))
        elif b > 0:
            pairs.append((p * pk ** b, q))
        elif b < 0:
            pairs.append((p, q * mk ** (-b)))
        else:
            pairs.append((p, q))
    return Seed(cluster, tuple(pairs), mutate_matrix(s.B, k), s.normalized)


def mutate_seed_sequence(s: Seed, seq: Iterable[int]) -> Seed:
    for k in seq:
        s = mutate_seed(s, k)
    return s


# extended matrices ----------------------------------------------------


@dataclass(frozen=True)
class ExtendedMatrix:
    """m x n integer matrix whose top n x n block is an exchange matrix."""

    rows: Rows
    B: ExchangeMatrix = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        rows = as_rows(self.rows)
        if not rows or len(rows) < len(rows[0]):
            raise ShapeMismatch("extended matrix needs at least n rows")
        n = len(rows[0])
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "B", ExchangeMatrix(rows[:n]))

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def bottom(self) -> Rows:
        return self.rows[self.n :]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _extended_fast(rows: Rows, B: ExchangeMatrix) -> ExtendedMatrix:
    out = ExtendedMatrix.__new__(ExtendedMatrix)
    object.__setattr__(out, "rows", rows)
    object.__setattr__(out, "B", B)
    return out


def mutate_extended(Bt: ExtendedMatrix, k: int) -> ExtendedMatrix:
    """Matrix mutation applied to all rows of an extended matrix."""
    if not 0 <= k < Bt.n:
        raise IndexError(f"mutation index {k} out of range for n={Bt.n}")
    rows = mutate_rows(Bt.rows, k)
    return _extended_fast(rows, mutate_matrix(Bt.B, k))


def principal_seed(B: ExchangeMatrix | Iterable[Iterable[object]]) -> ExtendedMatrix:
    """Extended matrix with identity bottom block."""
    B = ExchangeMatrix.of(B)
    n = B.n
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return _extended_fast(B.b + eye, B)


def c_vectors(Bt: ExtendedMatrix) -> list[tuple[int, ...]]:
    """Columns of the square bottom block."""
    n = Bt.n
    if Bt.m != 2 * n:
        raise ShapeMismatch(f"c-vectors need a 2n x n extended matrix, got {Bt.m} x {n}")
    bottom = Bt.bottom
    return [tuple(bottom[i][j] for i in range(n)) for j in range(n)]


def is_sign_coherent(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) or all(x <= 0 for x in v)


@dataclass
class SignCoherenceReport:
    coherent: bool
    depth: int
    states: int
    violations: list[tuple[tuple[int, ...], int, tuple[int, ...]]]

    def to_json(self) -> dict:
        return {
            "coherent": self.coherent,
            "depth": self.depth,
            "states": self.states,
            "violations": [
                {"sequence": [k + 1 for k in seq], "column": j + 1, "vector": list(v)}
                for seq, j, v in self.violations
            ],
        }


def _bfs_states(start, step, key, n: int, depth: int):
    """Yield ``(state, sequence)`` for every distinct state within ``depth``."""
    seen = {key(start)}
    frontier = [(start, ())]
    yield start, ()
    for _ in range(depth):
        nxt = []
        for state, seq in frontier:
            for k in range(n):
                if seq and seq[-1] == k:
                    continue
                child = step(state, k)
                ck = key(child)
                if ck in seen:
                    continue
                seen.add(ck)
                nxt.append((child, seq + (k,)))
                yield child, seq + (k,)
        frontier = nxt
        if not frontier:
            break


def check_sign_coherence(
    B: ExchangeMatrix | Iterable[Iterable[object]],
    depth: int,
    require_s_decomposable: bool = False,
) -> SignCoherenceReport:
    """Exhaustive c-vector sign-coherence check over all sequences up to ``depth``."""
    B = ExchangeMatrix.of(B)
    if require_s_decomposable:
        from .blocks import find_s_decomposition
        from .core_matrix import diagram_of

        if find_s_decomposition(diagram_of(B).with_vertex_weights(B.d)) is None:
            raise NotSDecomposable("matrix is not s-decomposable")
    violations = []
    states = 0
    for Bt, seq in _bfs_states(principal_seed(B), mutate_extended, lambda t: t.rows, B.n, depth):
        states += 1
        for j, v in enumerate(c_vectors(Bt)):
            if not is_sign_coherent(v):
                violations.append((seq, j, v))
    return SignCoherenceReport(not violations, depth, states, violations)


# Laurent expansions and audits ----------------------------------------


def laurent_expand(
    B: ExchangeMatrix | Iterable[Iterable[object]], seq: Iterable[int], principal: bool = False
) -> tuple[list[LaurentPoly], list[bool]]:
    """Cluster after ``seq`` in the initial variables plus per-variable positivity flags."""
    B = ExchangeMatrix.of(B)
    s = principal_coefficient_seed(B) if principal else initial_seed(B)
    s = mutate_seed_sequence(s, seq)
    return list(s.cluster), [x.is_positive() for x in s.cluster]


def exchange_relation_form(
    B: ExchangeMatrix | ExtendedMatrix | Iterable[Iterable[object]], k: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Exponent vectors ``([b_jk]+)_j`` and ``([-b_jk]+)_j`` of the exchange relation at ``k``.

    Extended matrices contribute their extra rows, so boundary arcs and
    coefficient variables show up in the monomials.
    """
    if isinstance(B, ExtendedMatrix):
        rows = B.rows
    elif isinstance(B, ExchangeMatrix):
        rows = B.b
    else:
        rows = as_rows(B)
        n = len(rows[0]) if rows else 0
        if len(rows) < n:
            raise ShapeMismatch("matrix needs at least as many rows as columns")
        _check_sign_condition(rows[:n])
    if not rows or not 0 <= k < len(rows[0]):
        raise IndexError(f"exchange index {k} out of range")
    col = [r[k] for r in rows]
    return tuple(max(b, 0) for b in col), tuple(max(-b, 0) for b in col)


def relation_shape(form: tuple[tuple[int, ...], tuple[int, ...]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sorted nonzero exponents on each side, the pattern of a Ptolemy relation."""
    plus, minus = form
    return (
        tuple(sorted((e for e in plus if e), reverse=True)),
        tuple(sorted((e for e in minus if e), reverse=True)),
    )


@dataclass
class PositivityReport:
    depth: int
    seeds: int
    variables: int
    violations: list[tuple[tuple[int, ...], int]]

    @property
    def positive(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "positive": self.positive,
            "seeds": self.seeds,
            "variables": self.variables,
            "violations": [{"sequence": [k + 1 for k in s], "index": i + 1} for s, i in self.violations],
        }


def audit_positivity(B: ExchangeMatrix | Iterable[Iterable[object]], depth: int) -> PositivityReport:
    """Expand every cluster variable reachable within ``depth`` and check its coefficients.

    Laurentness is enforced by the exact division inside :func:`mutate_seed`.
    """
    B = ExchangeMatrix.of(B)
    checked: dict[LaurentPoly, bool] = {}
    violations = []
    seeds = 0
    for s, seq in _bfs_states(initial_seed(B), mutate_seed, lambda t: (t.cluster, t.B.b), B.n, depth):
        seeds += 1
        for i, x in enumerate(s.cluster):
            if x not in checked:
                checked[x] = x.is_positive()
                if not checked[x]:
                    violations.append((seq, i))
    return PositivityReport(depth, seeds, len(checked), violations)


def exchange_graph(
    B: ExchangeMatrix | Iterable[Iterable[object]],
    coefficients: str = "trivial",
    cap: int = 10**4,
) -> nx.Graph:
    """Exchange graph with seeds identified by their unordered clusters.

    ``coefficients`` is ``"trivial"`` or ``"principal"``.  Stops at ``cap``
    vertices and sets ``graph["complete"]`` accordingly.
    """
    B = ExchangeMatrix.of(B)
    if coefficients == "trivial":
        s0 = initial_seed(B)
    elif coefficients == "principal":
        s0 = principal_coefficient_seed(B)
    else:
        raise ValueError(f"unknown coefficient type {coefficients!r}")
    G = nx.Graph(complete=True)
    k0 = s0.cluster_set()
    G.add_node(k0)
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        ks = s.cluster_set()
        for k in range(B.n):
            t = mutate_seed(s, k)
            kt = t.cluster_set()
            if kt not in G:
                if G.number_of_nodes() >= cap:
                    G.graph["complete"] = False
                    continue
                G.add_node(kt)
                queue.append(t)
            G.add_edge(ks, kt)
    return G


def cluster_variables(B: ExchangeMatrix | Iterable[Iterable[object]], cap: int = 10**4) -> set[LaurentPoly]:
    """All cluster variables of a finite-type exchange graph (capped)."""
    out: set[LaurentPoly] = set()
    for node in exchange_graph(B, "trivial", cap):
        out |= node
    return out


def random_sequence(n: int, length: int, rng: random.Random) -> tuple[int, ...]:
    """Random mutation sequence without immediate repetitions."""
    seq: list[int] = []
    for _ in range(length):
        choices = [k for k in range(n) if not seq or k != seq[-1]] or [0]
        seq.append(rng.choice(choices))
    return tuple(seq)


__all__ = [
    "TropicalMonomial",
    "Seed",
    "initial_seed",
    "principal_coefficient_seed",
    "exchange_binomials",
    "mutate_seed",
    "mutate_seed_sequence",
    "ExtendedMatrix",
    "mutate_extended",
    "principal_seed",
    "c_vectors",
    "is_sign_coherent",
    "SignCoherenceReport",
    "check_sign_coherence",
    "laurent_expand",
    "exchange_relation_form",
    "relation_shape",
    "PositivityReport",
    "audit_positivity",
    "exchange_graph",
    "cluster_variables",
    "random_sequence",
]

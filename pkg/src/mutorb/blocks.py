"""Blocks, s-blocks, gluing, and the search for block decompositions.

A block is a small diagram whose vertices are outlets or dead ends; s-blocks
additionally carry pending vertices, which correspond to pending arcs of an
orbifold.  Blocks are glued by identifying outlets of different blocks.  When
two glued blocks both join the same pair of outlets, opposite single edges
cancel and equal single edges merge into an edge of weight 4.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core_matrix import Diagram
from .errors import InvalidMatching, SearchBudgetExceeded

OUTLET, DEAD, PENDING = "o", "d", "p"


@dataclass(frozen=True)
class BlockTemplate:
    """Vertex roles and weighted edges of one block type."""

    kind: str
    roles: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]

    @property
    def size(self) -> int:
        return len(self.roles)

    @property
    def outlets(self) -> tuple[int, ...]:
        return tuple(v for v, r in enumerate(self.roles) if r == OUTLET)

    @property
    def pending(self) -> tuple[int, ...]:
        return tuple(v for v, r in enumerate(self.roles) if r == PENDING)

    @property
    def is_s_block(self) -> bool:
        return bool(self.pending)

    def diagram(self) -> Diagram:
        return Diagram(self.size, {(a, b): w for a, b, w in self.edges})

    def signed(self, a: int, b: int) -> int:
        for x, y, w in self.edges:
            if (x, y) == (a, b):
                return w
            if (x, y) == (b, a):
                return -w
        return 0


def _t(kind: str, roles: str, edges: Iterable[tuple[int, int, int]]) -> BlockTemplate:
    return BlockTemplate(kind, tuple(roles), tuple(edges))


# Vertex orders follow the matrices of the elementary blocks, so that the
# template diagram equals the diagram of the printed matrix.
TEMPLATES: dict[str, BlockTemplate] = {
    t.kind: t
    for t in [
        _t("single", "d", []),
        _t("I", "oo", [(0, 1, 1)]),
        _t("II", "ooo", [(0, 1, 1), (1, 2, 1), (2, 0, 1)]),
        _t("IIIa", "odd", [(1, 0, 1), (2, 0, 1)]),
        _t("IIIb", "ddo", [(2, 0, 1), (2, 1, 1)]),
        _t("IV", "oodd", [(0, 1, 1), (1, 2, 1), (1, 3, 1), (2, 0, 1), (3, 0, 1)]),
        _t(
            "V",
            "odddd",
            [(0, 1, 1), (0, 4, 1), (1, 2, 1), (1, 3, 1), (4, 2, 1), (4, 3, 1), (2, 0, 1), (3, 0, 1)],
        ),
        _t("IIIa~", "op", [(1, 0, 2)]),
        _t("IIIb~", "po", [(1, 0, 2)]),
        _t("IV~", "oop", [(0, 1, 1), (1, 2, 2), (2, 0, 2)]),
        _t("V1~", "odpd", [(0, 1, 1), (0, 3, 1), (1, 2, 2), (3, 2, 2), (2, 0, 2)]),
        _t("V2~", "pdod", [(0, 1, 2), (0, 3, 2), (1, 2, 1), (3, 2, 1), (2, 0, 2)]),
        _t("V12~", "pop", [(0, 1, 2), (1, 2, 2), (2, 0, 4)]),
        _t(
            "VI~",
            "ddddp",
            [(0, 1, 1), (0, 3, 1), (2, 1, 1), (2, 3, 1), (1, 4, 2), (3, 4, 2), (4, 0, 2), (4, 2, 2)],
        ),
    ]
}

BLOCK_KINDS = tuple(k for k in TEMPLATES if k != "single")
# larger blocks first: fewer, more specific placements are found sooner
_SEARCH_ORDER = tuple(sorted(BLOCK_KINDS, key=lambda k: (-TEMPLATES[k].size, BLOCK_KINDS.index(k))))
SURFACE_KINDS = ("I", "II", "IIIa", "IIIb", "IV", "V")
ORBIFOLD_KINDS = ("IIIa~", "IIIb~", "IV~", "V1~", "V2~", "V12~", "VI~")


@dataclass(frozen=True)
class Placement:
    """One block of a decomposition: ``vertices[t]`` is the image of template vertex t."""

    kind: str
    vertices: tuple[int, ...]

    @property
    def template(self) -> BlockTemplate:
        return TEMPLATES[self.kind]


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks placed on the vertices 0..n-1 of a diagram.

    Outlets that two blocks place on the same vertex are matched.  For
    s-decompositions ``orbifold_weights`` gives the weight (2 or 1/2) of the
    orbifold point attached to every pending vertex.
    """

    n: int
    blocks: tuple[Placement, ...]
    orbifold_weights: dict[int, Fraction] = field(default_factory=dict)

    @property
    def matching(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        seen: dict[int, tuple[int, int]] = {}
        out = []
        for b, pl in enumerate(self.blocks):
            for t, v in enumerate(pl.vertices):
                if pl.template.roles[t] != OUTLET:
                    continue
                if v in seen:
                    out.append((seen[v], (b, t)))
                else:
                    seen[v] = (b, t)
        return out

    @property
    def pending_vertices(self) -> list[int]:
        return sorted(
            v for pl in self.blocks for t, v in enumerate(pl.vertices) if pl.template.roles[t] == PENDING
        )

    def regular_weight(self) -> int:
        return 2 if any(w == Fraction(1, 2) for w in self.orbifold_weights.values()) else 1

    def vertex_weights(self) -> tuple[int, ...]:
        w = self.regular_weight()
        d = [w] * self.n
        for v in self.pending_vertices:
            d[v] = int(self.orbifold_weights.get(v, Fraction(2)) * w)
        return tuple(d)

    def diagram(self) -> Diagram:
        edges, _ = _glue_edges(self.n, [(pl.kind, pl.vertices) for pl in self.blocks])
        return Diagram(self.n, edges)

    def weighted_diagram(self) -> Diagram:
        return self.diagram().with_vertex_weights(self.vertex_weights())


def _glue_edges(n: int, placed: Sequence[tuple[str, Sequence[int]]]) -> tuple[dict[tuple[int, int], int], None]:
    contrib: dict[tuple[int, int], list[int]] = {}
    for kind, verts in placed:
        tpl = TEMPLATES[kind]
        for a, b, w in tpl.edges:
            i, j = verts[a], verts[b]
            key, s = ((i, j), w) if i < j else ((j, i), -w)
            contrib.setdefault(key, []).append(s)
    edges: dict[tuple[int, int], int] = {}
    for (i, j), cs in contrib.items():
        if len(cs) == 1:
            total = cs[0]
            w = abs(total)
        elif all(abs(c) == 1 for c in cs) and len(cs) == 2:
            total = sum(cs)
            w = total * total
        else:
            raise InvalidMatching(f"edges between {i + 1} and {j + 1} collide in an unsupported way")
        if total > 0:
            edges[(i, j)] = w
        elif total < 0:
            edges[(j, i)] = w
    return edges, None


def assemble(
    blocks: Sequence[str],
    matching: Iterable[tuple[tuple[int, int], tuple[int, int]]],
) -> Diagram:
    """Glue blocks along a partial matching of their outlets.

    ``blocks`` lists block kinds; ``matching`` pairs ``(block, local vertex)``
    occurrences.  Vertices are numbered by first appearance.
    """
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    used: set[tuple[int, int]] = set()
    for a, b in matching:
        for blk, t in (a, b):
            if not 0 <= blk < len(blocks) or not 0 <= t < TEMPLATES[blocks[blk]].size:
                raise InvalidMatching(f"no vertex {t} in block {blk}")
            if TEMPLATES[blocks[blk]].roles[t] != OUTLET:
                raise InvalidMatching(f"vertex {t} of block {blk} is not an outlet")
            if (blk, t) in used:
                raise InvalidMatching(f"outlet {t} of block {blk} matched twice")
            used.add((blk, t))
        if a[0] == b[0]:
            raise InvalidMatching(f"outlets of block {a[0]} matched to each other")
        parent[b] = a
    ids: dict[tuple[int, int], int] = {}
    placed = []
    for blk, kind in enumerate(blocks):
        verts = []
        for t in range(TEMPLATES[kind].size):
            root = (blk, t)
            while root in parent:
                root = parent[root]
            if root not in ids:
                ids[root] = len(ids)
            verts.append(ids[root])
        placed.append((kind, verts))
    edges, _ = _glue_edges(len(ids), placed)
    return Diagram(len(ids), edges)


def default_budget() -> int:
    raw = os.environ.get("MUTORB_BUDGET")
    return int(raw) if raw else 10**6


class _Search:
    """Backtracking over block placements covering a connected diagram."""

    def __init__(self, D: Diagram, pending_rule: list[int] | None, budget: int) -> None:
        # pending_rule[v]: 1 must be pending, 0 must not be, -1 either
        self.D = D
        self.n = D.n
        self.rule = pending_rule
        self.budget = budget
        self.nodes = 0
        self.nbrs = [set(D.neighbors(v)) for v in range(D.n)]
        self.contrib: dict[tuple[int, int], list[tuple[int, bool]]] = {}
        self.roles: list[list[str]] = [[] for _ in range(D.n)]
        self.blocks: list[Placement] = []
        max_w = max(D.edges.values(), default=0)
        self.hopeless = any(w not in (1, 2, 4) for w in D.edges.values()) or max_w > 4

    # pair bookkeeping ------------------------------------------------
    def target(self, i: int, j: int) -> int:
        return self.D.signed(i, j)

    @staticmethod
    def _status(target: int, cs: list[tuple[int, bool]]) -> int:
        """2 complete, 1 completable, 0 dead."""
        if not cs:
            return 2 if target == 0 else 1
        if len(cs) == 1:
            s, oo = cs[0]
            if s == target:
                return 2
            if oo and target in (0, 4 * s):
                return 1
            return 0
        if len(cs) == 2:
            (s1, o1), (s2, o2) = cs
            if not (o1 and o2):
                return 0
            tot = s1 + s2
            want = 0 if tot == 0 else 4 * (1 if tot > 0 else -1)
            return 2 if want == target else 0
        return 0

    def pair_status(self, i: int, j: int, extra: list[tuple[int, bool]] = ()) -> int:  # type: ignore[assignment]
        key = (i, j) if i < j else (j, i)
        cs = list(self.contrib.get(key, ()))
        for s, oo in extra:
            cs.append((s if i < j else -s, oo))
        return self._status(self.target(*key), cs)

    def capacity_ok(self, v: int, role: str) -> bool:
        have = self.roles[v]
        if self.rule is not None:
            need = self.rule[v]
            if need == 1 and role != PENDING:
                return False
            if need == 0 and role == PENDING:
                return False
        if not have:
            return True
        return len(have) == 1 and have[0] == OUTLET and role == OUTLET

    def incomplete_pair(self) -> tuple[int, int] | None:
        best = None
        for (i, j) in self.D.edges:
            key = (i, j) if i < j else (j, i)
            if self.pair_status(*key) != 2 and (best is None or key < best):
                best = key
        for key, cs in self.contrib.items():
            if self._status(self.target(*key), cs) != 2 and (best is None or key < best):
                best = key
        return best

    # placements ------------------------------------------------------
    def placements(self, i: int, j: int):
        seen = set()
        for kind in _SEARCH_ORDER:
            tpl = TEMPLATES[kind]
            for a, b, w in tpl.edges:
                for x, y in ((a, b), (b, a)):
                    for phi in self._extend(tpl, {x: i, y: j}):
                        sig = (kind, frozenset((phi[t], tpl.roles[t]) for t in range(tpl.size)),
                               frozenset((phi[p], phi[q], ww) for p, q, ww in tpl.edges))
                        if sig in seen:
                            continue
                        seen.add(sig)
                        yield kind, tuple(phi[t] for t in range(tpl.size))

    def _edge_contribs(self, tpl: BlockTemplate, t: int, phi: dict[int, int]) -> list[tuple[int, int, bool]] | None:
        """Contributions of template edges from t to mapped vertices, as (other, signed, oo)."""
        out = []
        for a, b, w in tpl.edges:
            if a == t and b in phi:
                other, s = b, w
            elif b == t and a in phi:
                other, s = a, -w
            else:
                continue
            oo = w == 1 and tpl.roles[a] == OUTLET and tpl.roles[b] == OUTLET
            out.append((other, s, oo))
        return out

    def _vertex_ok(self, tpl: BlockTemplate, t: int, v: int, phi: dict[int, int]) -> bool:
        role = tpl.roles[t]
        if v in phi.values() or not self.capacity_ok(v, role):
            return False
        if role != OUTLET:
            deg = sum(1 for a, b, _ in tpl.edges if t in (a, b))
            if len(self.nbrs[v]) != deg:
                return False
        for other, s, oo in self._edge_contribs(tpl, t, phi):
            if self.pair_status(v, phi[other], [(s, oo)]) == 0:
                return False
        for u, pv in phi.items():
            if tpl.signed(t, u) == 0 and (role != OUTLET or tpl.roles[u] != OUTLET):
                if self.D.signed(v, pv) != 0:
                    return False
        return True

    def _extend(self, tpl: BlockTemplate, seed: dict[int, int]):
        phi: dict[int, int] = {}
        for t, v in seed.items():
            if not self._vertex_ok(tpl, t, v, phi):
                return
            phi[t] = v
        order = []
        frontier = list(seed)
        while len(order) + len(seed) < tpl.size:
            for a, b, _ in tpl.edges:
                for p, q in ((a, b), (b, a)):
                    if p in frontier and q not in frontier:
                        frontier.append(q)
                        order.append(q)
        yield from self._extend_rec(tpl, phi, order, 0)

    def _extend_rec(self, tpl: BlockTemplate, phi: dict[int, int], order: list[int], pos: int):
        if pos == len(order):
            if self._block_closed(tpl, phi):
                yield dict(phi)
            return
        t = order[pos]
        role = tpl.roles[t]
        contribs = self._edge_contribs(tpl, t, phi)
        strict = [c for c in contribs if not c[2]]
        if strict or role != OUTLET:
            base = strict[0][0] if strict else contribs[0][0]
            cands = sorted(self.nbrs[phi[base]])
        else:
            cands = range(self.n)
        for v in cands:
            if self._vertex_ok(tpl, t, v, phi):
                phi[t] = v
                yield from self._extend_rec(tpl, phi, order, pos + 1)
                del phi[t]

    def _block_closed(self, tpl: BlockTemplate, phi: dict[int, int]) -> bool:
        for t, role in enumerate(tpl.roles):
            if role == OUTLET:
                continue
            want = {phi[u]: tpl.signed(t, u) for u in range(tpl.size) if tpl.signed(t, u)}
            have = {u: self.D.signed(phi[t], u) for u in self.nbrs[phi[t]]}
            if want != have:
                return False
        return True

    def apply(self, kind: str, verts: tuple[int, ...], sign: int) -> None:
        tpl = TEMPLATES[kind]
        for a, b, w in tpl.edges:
            i, j = verts[a], verts[b]
            oo = w == 1 and tpl.roles[a] == OUTLET and tpl.roles[b] == OUTLET
            key, s = ((i, j), w) if i < j else ((j, i), -w)
            if sign > 0:
                self.contrib.setdefault(key, []).append((s, oo))
            else:
                self.contrib[key].remove((s, oo))
                if not self.contrib[key]:
                    del self.contrib[key]
        for t, v in enumerate(verts):
            if sign > 0:
                self.roles[v].append(tpl.roles[t])
            else:
                self.roles[v].remove(tpl.roles[t])
        if sign > 0:
            self.blocks.append(Placement(kind, verts))
        else:
            self.blocks.pop()

    def run(self):
        if self.hopeless:
            return
        yield from self._rec()

    def _rec(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"decomposition search exceeded {self.budget} nodes")
        pair = self.incomplete_pair()
        if pair is None:
            if self.rule is not None and any(
                self.rule[v] == 1 and PENDING not in self.roles[v] for v in range(self.n)
            ):
                return
            yield list(self.blocks)
            return
        for kind, verts in list(self.placements(*pair)):
            self.apply(kind, verts, 1)
            yield from self._rec()
            self.apply(kind, verts, -1)


def _components(D: Diagram) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in range(D.n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in D.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _decompose_component(
    D: Diagram, weights: tuple[int, ...] | None, budget: int, prefer_w: Sequence[int]
) -> tuple[list[Placement], dict[int, Fraction]] | None:
    if D.n == 1:
        return [Placement("single", (0,))], {}
    if weights is None:
        search = _Search(D, None, budget)
        for blocks in search.run():
            pend = {v for pl in blocks for t, v in enumerate(pl.vertices) if pl.template.roles[t] == PENDING}
            return blocks, {v: Fraction(2) for v in sorted(pend)}
        return None
    for w in prefer_w:
        rule = []
        for d in weights:
            if d == w:
                rule.append(0)
            elif Fraction(d, w) in (Fraction(2), Fraction(1, 2)):
                rule.append(1)
            else:
                rule = []
                break
        if len(rule) != D.n:
            continue
        search = _Search(D, rule, budget)
        for blocks in search.run():
            ow = {v: Fraction(weights[v], w) for v in range(D.n) if rule[v] == 1}
            return blocks, ow
    return None


def find_s_decomposition(
    D: Diagram, budget: int | None = None, regular_weight: int | None = None
) -> BlockDecomposition | None:
    """Search for a block (or s-block) decomposition of ``D``.

    For weighted diagrams the pending vertices are exactly the vertices whose
    weight differs from the common weight of the regular vertices; vertex
    weights then fix the orbifold weight of each pending vertex.  For an
    unweighted diagram every pending vertex is given orbifold weight 2.
    ``regular_weight`` chooses which reading to try first when both 1 and 2
    are consistent with the vertex weights.
    """
    budget = default_budget() if budget is None else budget
    blocks: list[Placement] = []
    ow: dict[int, Fraction] = {}
    for comp in _components(D):
        sub = D.induced(comp)
        weights = sub.vertex_weights
        if weights is not None:
            ws = sorted(set(weights))
            prefer = [1, 2] if regular_weight != 2 else [2, 1]
            prefer = [w for w in prefer if w in ws] or ws[:1]
        else:
            prefer = []
        res = _decompose_component(sub, weights, budget, prefer)
        if res is None:
            return None
        sub_blocks, sub_ow = res
        for pl in sub_blocks:
            blocks.append(Placement(pl.kind, tuple(comp[v] for v in pl.vertices)))
        for v, x in sub_ow.items():
            ow[comp[v]] = x
    return BlockDecomposition(D.n, tuple(blocks), ow)


def is_s_decomposable(D: Diagram, budget: int | None = None) -> bool:
    return find_s_decomposition(D, budget) is not None


__all__ = [
    "BlockTemplate",
    "TEMPLATES",
    "BLOCK_KINDS",
    "SURFACE_KINDS",
    "ORBIFOLD_KINDS",
    "Placement",
    "BlockDecomposition",
    "assemble",
    "find_s_decomposition",
    "is_s_decomposable",
    "default_budget",
]

"""Diagram mutation and canonical forms.

Canonical forms use color refinement followed by an individualization
search over the remaining ties, pruned with the automorphisms discovered
along the way.  The result is an exact certificate: two diagrams get the
same key if and only if they are isomorphic as weighted digraphs.
"""

from __future__ import annotations

from math import isqrt
from typing import Hashable, Mapping, Sequence

from .core_matrix import Diagram, diagram_of, matrices_for_weighted_diagram, mutate_matrix
from .errors import NonRealizable


def mutate_diagram(D: Diagram, k: int) -> Diagram:
    """Mutation of a diagram at vertex ``k`` (0-based).

    Weighted diagrams are lifted to their matrix.  Unweighted diagrams use
    the square-root rule directly: with signed ``x = +-sqrt(c)`` for the
    edge between i and j, every path i->k->j of weights a, b turns x into
    ``x + sqrt(ab)``.
    """
    if not 0 <= k < D.n:
        raise IndexError(f"mutation index {k} out of range for n={D.n}")
    if D.vertex_weights is not None:
        B = mutate_matrix(matrices_for_weighted_diagram(D), k)
        return diagram_of(B).with_vertex_weights(D.vertex_weights)
    edges: dict[tuple[int, int], int] = {}
    into_k, out_of_k = [], []
    for (i, j), w in D.edges.items():
        if i == k:
            edges[(j, i)] = w
            out_of_k.append((j, w))
        elif j == k:
            edges[(j, i)] = w
            into_k.append((i, w))
        else:
            edges[(i, j)] = w
    for i, a in into_k:
        for j, b in out_of_k:
            ab = a * b
            fwd = edges.pop((i, j), None)
            back = edges.pop((j, i), None)
            c = fwd if fwd is not None else (back if back is not None else 0)
            if c == 0:
                edges[(i, j)] = ab
                continue
            cross = isqrt(ab * c)
            if cross * cross != ab * c:
                raise NonRealizable(
                    f"weights {a},{b},{c} around vertex {k + 1} have no integer mutation"
                )
            if fwd is not None:
                edges[(i, j)] = c + ab + 2 * cross
            else:
                d = c + ab - 2 * cross
                if d:
                    if ab > c:
                        edges[(i, j)] = d
                    else:
                        edges[(j, i)] = d
    return Diagram(D.n, edges)


def mutate_diagram_sequence(D: Diagram, seq: Sequence[int]) -> Diagram:
    for k in seq:
        D = mutate_diagram(D, k)
    return D


Certificate = tuple


def _refine(colors: list[int], out_adj: list[list[tuple[int, int]]], in_adj: list[list[tuple[int, int]]]) -> list[int]:
    n = len(colors)
    ncls = len(set(colors))
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted((w, colors[u]) for u, w in out_adj[v])),
                tuple(sorted((w, colors[u]) for u, w in in_adj[v])),
            )
            for v in range(n)
        ]
        order = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == ncls:
            return new
        colors, ncls = new, len(order)


def _orbit_rep(v: int, gens: list[list[int]], n: int) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonical_labeling(
    n: int, base_colors: Sequence[Hashable], edges: Mapping[tuple[int, int], int]
) -> tuple[Certificate, list[int]]:
    """Canonical certificate of a vertex-colored weighted digraph.

    Returns the certificate and the labeling ``v -> position`` realizing it.
    ``base_colors`` must be mutually comparable.
    """
    out_adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    in_adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (i, j), w in edges.items():
        out_adj[i].append((j, w))
        in_adj[j].append((i, w))
    palette = {c: r for r, c in enumerate(sorted(set(base_colors)))}
    start = _refine([palette[c] for c in base_colors], out_adj, in_adj)
    best: list = [None, None]
    gens: list[list[int]] = []

    def leaf(colors: list[int]) -> None:
        inv = [0] * n
        for v, p in enumerate(colors):
            inv[p] = v
        cert = (
            tuple(base_colors[inv[p]] for p in range(n)),
            tuple(sorted((colors[i], colors[j], w) for (i, j), w in edges.items())),
        )
        if best[0] is None or cert < best[0]:
            best[0], best[1] = cert, colors
        elif cert == best[0]:
            lab = best[1]
            inv_best = [0] * n
            for v, p in enumerate(lab):
                inv_best[p] = v
            g = [inv_best[colors[v]] for v in range(n)]
            if any(g[v] != v for v in range(n)):
                gens.append(g)

    def search(colors: list[int], prefix: list[int]) -> None:
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        if len(counts) == n:
            leaf(colors)
            return
        target = min(c for c, m in counts.items() if m > 1)
        cell = [v for v in range(n) if colors[v] == target]
        explored: list[int] = []
        for v in cell:
            if explored:
                fixing = [g for g in gens if all(g[p] == p for p in prefix)]
                if fixing:
                    rep = _orbit_rep(v, fixing, n)
                    if any(rep[u] == rep[v] for u in explored):
                        continue
            key = [(c, 0 if u == v else 1) for u, c in enumerate(colors)]
            order = {s: r for r, s in enumerate(sorted(set(key)))}
            child = _refine([order[s] for s in key], out_adj, in_adj)
            search(child, prefix + [v])
            explored.append(v)

    search(start, [])
    return best[0], best[1]


def _encode(cert: Certificate) -> bytes:
    colors, edges = cert
    head = ",".join(str(c) for c in colors)
    body = ";".join(f"{i},{j},{w}" for i, j, w in edges)
    return f"{len(colors)}|{head}|{body}".encode()


def canonical_tuple(D: Diagram) -> Certificate:
    """Hashable canonical certificate, cheaper than :func:`canonical_form`."""
    colors = D.vertex_weights if D.vertex_weights is not None else (0,) * D.n
    return canonical_labeling(D.n, colors, D.edges)[0]


def canonical_form(D: Diagram) -> bytes:
    """Byte-string key equal for two diagrams iff they are isomorphic.

    Vertex weights take part in the comparison when present.
    """
    return _encode(canonical_tuple(D))


def canonical_relabeling(D: Diagram) -> list[int]:
    """Permutation ``v -> position`` putting ``D`` in canonical order."""
    colors = D.vertex_weights if D.vertex_weights is not None else (0,) * D.n
    return canonical_labeling(D.n, colors, D.edges)[1]


def is_isomorphic(D1: Diagram, D2: Diagram) -> bool:
    return D1.n == D2.n and canonical_tuple(D1) == canonical_tuple(D2)


__all__ = [
    "mutate_diagram",
    "mutate_diagram_sequence",
    "canonical_form",
    "canonical_tuple",
    "canonical_labeling",
    "canonical_relabeling",
    "is_isomorphic",
]

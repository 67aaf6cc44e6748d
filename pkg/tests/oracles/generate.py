"""Independent brute-force oracles, frozen into tests/data/oracles.json.

Nothing here imports the package.  Cluster variables are tracked as exact
rational values at a generic point, and matrices are compared up to
simultaneous permutation by trying every permutation.

    python3 tests/oracles/generate.py
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from fractions import Fraction
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "oracles.json"
POINT = (Fraction(2, 7), Fraction(3, 11), Fraction(5, 13), Fraction(7, 17), Fraction(11, 19), Fraction(13, 23))


def mutate(b, k):
    n = len(b)
    out = [list(r) for r in b]
    for i in range(n):
        for j in range(len(b[0])):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                out[i][j] = b[i][j] + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 2
    return tuple(tuple(r) for r in out)


def exchange(x, b, k):
    plus = minus = Fraction(1)
    for j in range(len(b)):
        if b[j][k] > 0:
            plus *= x[j] ** b[j][k]
        elif b[j][k] < 0:
            minus *= x[j] ** (-b[j][k])
    y = list(x)
    y[k] = (plus + minus) / x[k]
    return tuple(y)


def seeds(b):
    """Clusters (as frozensets of values) and exchange edges of a finite type matrix."""
    x0 = POINT[: len(b)]
    start = (x0, tuple(map(tuple, b)))
    seen = {frozenset(x0)}
    edges = set()
    queue = deque([start])
    while queue:
        x, m = queue.popleft()
        for k in range(len(m)):
            y, m2 = exchange(x, m, k), mutate(m, k)
            a, c = frozenset(x), frozenset(y)
            edges.add(frozenset((a, c)))
            if c not in seen:
                seen.add(c)
                queue.append((y, m2))
    return seen, edges


def canon(b):
    n = len(b)
    return min(tuple(tuple(b[p[i]][p[j]] for j in range(n)) for i in range(n)) for p in itertools.permutations(range(n)))


def class_size(b, cap=5000):
    seen = {canon(b)}
    queue = deque([tuple(map(tuple, b))])
    while queue:
        m = queue.popleft()
        for k in range(len(m)):
            m2 = mutate(m, k)
            c = canon(m2)
            if c not in seen:
                seen.add(c)
                queue.append(m2)
                if len(seen) > cap:
                    return None
    return len(seen)


def skew(n, edges):
    b = [[0] * n for _ in range(n)]
    for i, j, w in edges:
        r = int(round(w**0.5))
        b[i][j], b[j][i] = r, -r
    return b


def triangulations(m):
    """Triangulations of a convex m-gon, as sets of diagonals."""
    if m < 3:
        return [frozenset()]

    def rec(verts):
        if len(verts) < 3:
            return [frozenset()]
        a, c = verts[0], verts[-1]
        out = []
        for t in range(1, len(verts) - 1):
            b = verts[t]
            for left in rec(verts[: t + 1]):
                for right in rec(verts[t:]):
                    diag = {(a, b), (b, c)} - {(verts[0], verts[1]), (verts[-2], verts[-1])}
                    out.append(left | right | frozenset(d for d in diag if d != (a, c)))
        return out

    return list(set(rec(list(range(m)))))


def main() -> None:
    B2 = [[0, 1], [-2, 0]]
    A3 = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    out = {}
    for name, b in (("B2", B2), ("A3", A3)):
        cl, edges = seeds(b)
        variables = set().union(*cl)
        degrees = sorted({sum(1 for e in edges if c in e) for c in cl})
        out[name] = {"clusters": len(cl), "variables": len(variables), "edges": len(edges), "degrees": degrees}
    fixtures = {
        "A3": A3,
        "affine": skew(3, [(0, 1, 1), (1, 2, 1), (2, 0, 4)]),
        "gamma11": skew(5, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (1, 4, 1), (2, 0, 4)]),
        "torus": skew(5, [(0, 1, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 0, 4), (3, 2, 1), (3, 4, 1), (4, 1, 1)]),
        "IV~ weight 2": [[0, 1, -1], [-1, 0, 1], [2, -2, 0]],
        "V12~ weight 2": [[0, 2, -2], [-1, 0, 1], [2, -2, 0]],
    }
    out["class_sizes"] = {k: class_size(v) for k, v in fixtures.items()}
    out["polygon_triangulations"] = {str(m): len(triangulations(m)) for m in range(3, 8)}
    OUT.parent.mkdir(exist_ok=True)
    OUT.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(json.dumps(out, sort_keys=True))


if __name__ == "__main__":
    main()

"""Independent reference computations used only by the tests.

Nothing here calls into the package's enumeration or product code: faces
are realised as integer points of the reflection arrangements and
subspaces over GF(q) as explicit sets of coordinate tuples.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def arrangement(family: str, n: int):
    """Linear forms as coefficient tuples, in the package's hyperplane order."""
    forms = []
    for i, j in itertools.combinations(range(n), 2):
        v = [0] * n
        v[i], v[j] = 1, -1
        forms.append(tuple(v))
    if family in ("B", "D"):
        for i, j in itertools.combinations(range(n), 2):
            v = [0] * n
            v[i], v[j] = 1, 1
            forms.append(tuple(v))
    if family == "B":
        for i in range(n):
            v = [0] * n
            v[i] = 1
            forms.append(tuple(v))
    return forms


def signs_at(forms, point) -> tuple[int, ...]:
    out = []
    for f in forms:
        s = sum(a * b for a, b in zip(f, point))
        out.append((s > 0) - (s < 0))
    return tuple(out)


@lru_cache(maxsize=None)
def realised(family: str, n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Every sign vector realised by an integer point, with one witness."""
    forms = arrangement(family, n)
    out = {}
    for p in itertools.product(range(-n, n + 1), repeat=n):
        out.setdefault(signs_at(forms, p), p)
    return out


def point_product(family: str, n: int, sx, sy) -> tuple[int, ...]:
    """Sign vector of ``p + eps q``: the face reached from x towards y."""
    pts = realised(family, n)
    p, q = pts[sx], pts[sy]
    big = 10 * (2 * n + 1)
    return signs_at(arrangement(family, n), [big * a + b for a, b in zip(p, q)])


def subspaces_brute(q: int, dim: int, k: int, pairing=None, quadratic=None) -> set[frozenset]:
    """All k-dimensional subspaces as frozensets of coordinate tuples, by
    closing every k-tuple of vectors under linear combinations."""
    vectors = list(itertools.product(range(q), repeat=dim))
    zero = tuple([0] * dim)
    found = set()
    for gens in itertools.combinations([v for v in vectors if v != zero], k):
        span = set()
        for coeffs in itertools.product(range(q), repeat=k):
            span.add(tuple(sum(c * g[t] for c, g in zip(coeffs, gens)) % q for t in range(dim)))
        if len(span) != q**k:
            continue
        s = frozenset(span)
        if pairing is not None and any(pairing(u, v) % q for u in s for v in s):
            continue
        if quadratic is not None and any(quadratic(u) % q for u in s):
            continue
        found.add(s)
    return found


def symplectic_pairing(m: int):
    def f(x, y):
        return sum(x[i] * y[m + i] - x[m + i] * y[i] for i in range(m))

    return f


def orthogonal_quadratic(m: int):
    def f(x):
        return sum(x[i] * x[m + i] for i in range(m))

    return f


def set_partitions_count(a: int, j: int) -> int:
    """Stirling numbers of the second kind by brute-force labelling."""
    if a == 0:
        return int(j == 0)
    seen = set()
    for labels in itertools.product(range(j), repeat=a):
        if len(set(labels)) != j:
            continue
        blocks = frozenset(frozenset(i for i in range(a) if labels[i] == b) for b in range(j))
        seen.add(blocks)
    return len(seen)

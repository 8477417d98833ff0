"""Exact linear algebra over Q, plus modular rank for large integer matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

PRIMES = (2_147_483_647, 2_147_483_629, 2_147_483_587)


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def solve(columns: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_k columns[k] == target``, or None."""
    if not columns:
        return [] if all(t == 0 for t in target) else None
    k = len(columns)
    aug = [[col[i] for col in columns] + [target[i]] for i in range(len(target))]
    red, piv = row_reduce(aug)
    if k in piv:
        return None
    sol = [Fraction(0)] * k
    for row, c in zip(red, piv):
        sol[c] = row[-1]
    return sol


def rank_mod_p(a: np.ndarray, p: int = PRIMES[0]) -> int:
    """Rank of an integer matrix over GF(p), by vectorised elimination."""
    m = np.array(a, dtype=object) % p
    m = m.astype(np.int64)
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = np.nonzero(m[r + 1 :, c])[0] + r + 1
        if below.size:
            f = m[below, c].reshape(-1, 1)
            m[below] = (m[below] - (f * m[r]) % p) % p
        r += 1
    return r

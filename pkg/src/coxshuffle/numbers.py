"""Stirling-type coefficient tables and q-numbers, in exact integers."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

KINDS = ("plain", "signed", "qA", "qSymplectic", "qOrthogonal")


@functools.lru_cache(maxsize=None)
def stirling2(a: int, j: int) -> int:
    """Stirling numbers of the second kind, ``S(a,j) = j S(a-1,j) + S(a-1,j-1)``."""
    if a < 0 or j < 0:
        raise ValueError("arguments must be nonnegative")
    if a == 0 or j == 0:
        return int(a == j)
    if j > a:
        return 0
    return j * stirling2(a - 1, j) + stirling2(a - 1, j - 1)


@functools.lru_cache(maxsize=None)
def signed_stirling(a: int, j: int) -> int:
    """``S(a,j) = 2j S(a-1,j) + S(a-1,j-1)``: set partitions of ``a`` items
    into ``j`` blocks, each block split again into two (unordered) parts."""
    if a < 0 or j < 0:
        raise ValueError("arguments must be nonnegative")
    if a == 0 or j == 0:
        return int(a == j)
    if j > a:
        return 0
    return 2 * j * signed_stirling(a - 1, j) + signed_stirling(a - 1, j - 1)


def _power(base: int, e: int) -> int:
    # 0**0 == 1 in Python already; kept explicit for readers of the formulas
    return 1 if e == 0 else base**e


def stirling2_explicit(a: int, j: int) -> Fraction:
    """Alternating-sum closed form, with ``0**0 = 1``."""
    total = sum((-1) ** (j - i) * comb(j, i) * _power(i, a) for i in range(j + 1))
    return Fraction(total, factorial(j))


def signed_stirling_explicit(a: int, j: int) -> Fraction:
    total = sum((-1) ** (j - i) * comb(j, i) * _power(2 * i, a) for i in range(j + 1))
    return Fraction(total, 2**j * factorial(j))


def q_number(j: int, q: int) -> int:
    """``[j] = 1 + q + ... + q^(j-1)``; ``[0] = 0``."""
    if j < 0 or q < 1:
        raise ValueError("need j >= 0 and q >= 1")
    return sum(q**i for i in range(j))


def q_factor(kind: str, j: int, q: int, n: int | None) -> int:
    """Coefficient of ``sigma_j`` in ``sigma_j sigma_1`` for each building."""
    if kind == "qA":
        return q_number(j, q)
    if n is None:
        raise ValueError(f"{kind} needs the rank n")
    if kind == "qSymplectic":
        return (1 + q ** (2 * n - j)) * q_number(j, q)
    if kind == "qOrthogonal":
        return (1 + q ** (2 * n - j - 1)) * q_number(j, q)
    raise ValueError(f"unknown kind {kind!r}")


@functools.lru_cache(maxsize=None)
def q_stirling(kind: str, a: int, j: int, q: int, n: int | None = None) -> int:
    """q-analogues ``S(a,j) = c_j S(a-1,j) + q^(j-1) S(a-1,j-1)`` where ``c_j``
    is :func:`q_factor`.  For the symplectic and orthogonal kinds the table
    depends on ``n``."""
    if kind not in ("qA", "qSymplectic", "qOrthogonal"):
        raise ValueError(f"unknown kind {kind!r}")
    if a < 0 or j < 0:
        raise ValueError("arguments must be nonnegative")
    if a == 0 or j == 0:
        return int(a == j)
    if j > a:
        return 0
    return q_factor(kind, j, q, n) * q_stirling(kind, a - 1, j, q, n) + q ** (j - 1) * q_stirling(
        kind, a - 1, j - 1, q, n
    )


def falling_coefficients(j: int, step: int = 1, offset: int = 0) -> list[int]:
    """Coefficients ``[c_0, ..., c_j]`` of ``prod_{m<j} (x - offset - step*m)``."""
    poly = [1]
    for m in range(j):
        root = offset + step * m
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= root * c
        poly = nxt
    return poly


def riffle_coefficients(j: int) -> list[int]:
    """``[c_1j, ..., c_jj]``: coefficients of ``x, ..., x^j`` in ``x(x-1)...(x-j+1)``."""
    if j < 1:
        raise ValueError("j must be at least 1")
    return falling_coefficients(j)[1:]


def poly_from_roots(roots: list[int]) -> list[int]:
    """Integer coefficients ``[P_0, ..., P_m]`` of ``prod (x - r)``."""
    poly = [1]
    for r in roots:
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= r * c
        poly = nxt
    return poly


@dataclass(frozen=True)
class CoefficientTable:
    kind: str
    q: int | None
    n: int | None
    values: dict[tuple[int, int], int]

    def rows(self) -> list[tuple[int, int, int]]:
        return [(a, j, v) for (a, j), v in sorted(self.values.items())]


def coefficient_table(kind: str, amax: int, q: int | None = None, n: int | None = None) -> CoefficientTable:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    values = {}
    for a in range(amax + 1):
        for j in range(a + 1):
            if kind == "plain":
                v = stirling2(a, j)
            elif kind == "signed":
                v = signed_stirling(a, j)
            else:
                if q is None:
                    raise ValueError(f"{kind} needs q")
                v = q_stirling(kind, a, j, q, n)
            values[(a, j)] = v
    return CoefficientTable(kind, q, n, values)

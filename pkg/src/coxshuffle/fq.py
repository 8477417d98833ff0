"""Subspaces of small vector spaces over a prime field.

Vectors of ``GF(q)^d`` are numbered ``0..q^d-1`` (base-q digits, first
coordinate most significant).  A subspace is stored as a Python integer
bitmask of its member vectors, so meets are a single ``&``; joins and
orthogonal complements are computed once and cached.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

FqMatrix = tuple[tuple[int, ...], ...]

FORMS = (None, "symplectic", "orthogonal")


def is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, math.isqrt(q) + 1))


class FiniteSpace:
    """``GF(q)^dim`` with an optional form.

    For a form, ``dim = 2m`` and coordinates are ``(a_1..a_m, b_1..b_m)`` in
    the basis ``e_1..e_m, f_1..f_m``.  The symplectic form pairs ``e_i`` with
    ``f_i`` as ``+1`` and ``f_i`` with ``e_i`` as ``-1``; the orthogonal one
    is symmetric, with quadratic form ``Q(v) = sum a_i b_i`` deciding which
    vectors are singular (this matters when q = 2).
    """

    def __init__(self, q: int, dim: int, form: str | None = None):
        if not is_prime(q):
            raise ValueError(f"q={q} is not prime")
        if form not in FORMS:
            raise ValueError(f"unknown form {form!r}")
        if form and dim % 2:
            raise ValueError("a form needs even dimension")
        self.q, self.dim, self.form = q, dim, form
        self.size = q**dim
        if self.size > 5000:
            raise ValueError("vector space too large for exhaustive enumeration")
        self.coords = [tuple(v // q ** (dim - 1 - k) % q for k in range(dim)) for v in range(self.size)]
        weights = [q ** (dim - 1 - k) for k in range(dim)]
        self._index = lambda cs: sum((c % q) * w for c, w in zip(cs, weights))
        self.add = [[self._index([a + b for a, b in zip(x, y)]) for y in self.coords] for x in self.coords]
        self.mul = [[self._index([c * a for a in x]) for x in self.coords] for c in range(q)]
        self.everything = (1 << self.size) - 1
        self.zero = 1  # the subspace {0}
        self._members: dict[int, list[int]] = {}
        self._basis: dict[int, list[int]] = {}
        self._join: dict[tuple[int, int], int] = {}
        self._perp: dict[int, int] = {}
        if form:
            m = dim // 2
            self.bil = [[self._pair(x, y, m) for y in self.coords] for x in self.coords]
            self.orth = [sum(1 << w for w in range(self.size) if self.bil[v][w] == 0) for v in range(self.size)]
            if form == "orthogonal":
                sing = [v for v, x in enumerate(self.coords) if sum(x[i] * x[m + i] for i in range(m)) % q == 0]
            else:
                sing = range(self.size)
            self.singular = sum(1 << v for v in sing)

    def _pair(self, x, y, m) -> int:
        s = sum(x[i] * y[m + i] for i in range(m))
        t = sum(x[m + i] * y[i] for i in range(m))
        return (s - t) % self.q if self.form == "symplectic" else (s + t) % self.q

    def vector(self, coords: Sequence[int]) -> int:
        return self._index(coords)

    # -- subspace operations

    def span(self, vectors: Iterable[int]) -> int:
        members = {0}
        for v in vectors:
            if v in members:
                continue
            members = {self.add[s][self.mul[c][v]] for s in members for c in range(self.q)}
        return sum(1 << v for v in members)

    def members(self, mask: int) -> list[int]:
        out = self._members.get(mask)
        if out is None:
            out = [v for v in range(self.size) if mask >> v & 1]
            self._members[mask] = out
        return out

    def basis(self, mask: int) -> list[int]:
        out = self._basis.get(mask)
        if out is None:
            out, cur = [], self.zero
            for v in self.members(mask):
                if not cur >> v & 1:
                    out.append(v)
                    cur = self.join(cur, self.span([v]))
            self._basis[mask] = out
        return out

    def dim_of(self, mask: int) -> int:
        return round(math.log(mask.bit_count(), self.q))

    def join(self, a: int, b: int) -> int:
        if a & b == b:
            return a
        if a & b == a:
            return b
        key = (a, b) if a < b else (b, a)
        out = self._join.get(key)
        if out is None:
            members = self.members(a)
            cur = a
            for v in self.basis(b):
                if cur >> v & 1:
                    continue
                members = [self.add[s][self.mul[c][v]] for s in members for c in range(self.q)]
                cur = sum(1 << w for w in members)
            out = cur
            self._join[key] = out
        return out

    def perp(self, a: int) -> int:
        out = self._perp.get(a)
        if out is None:
            out = self.everything
            for v in self.basis(a):
                out &= self.orth[v]
            self._perp[a] = out
        return out

    def is_isotropic(self, a: int) -> bool:
        """Totally isotropic (totally singular for the orthogonal form)."""
        if self.form is None:
            raise ValueError("no form")
        if self.form == "orthogonal":
            return a & self.singular == a
        return a & self.perp(a) == a

    def lines(self, mask: int) -> list[int]:
        """Normalised representatives (first nonzero coordinate 1) of the
        lines inside ``mask``."""
        out = []
        for v in self.members(mask):
            if v and next(c for c in self.coords[v] if c) == 1:
                out.append(v)
        return out

    def line(self, v: int) -> int:
        return sum(1 << self.mul[c][v] for c in range(self.q))

    # -- row echelon forms

    def rref(self, mask: int) -> FqMatrix:
        rows = [list(self.coords[v]) for v in self.basis(mask)]
        q = self.q
        r = 0
        for c in range(self.dim):
            p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = pow(rows[r][c], q - 2, q)
            rows[r] = [x * inv % q for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
            r += 1
        return tuple(tuple(row) for row in rows[:r])

    def from_rows(self, rows: Iterable[Sequence[int]]) -> int:
        return self.span(self.vector(r) for r in rows)

    # -- enumeration

    def subspaces(self, k: int, isotropic: bool = False) -> list[int]:
        """All ``k``-dimensional subspaces (isotropic ones if asked), sorted
        by row echelon form."""
        if k < 0 or k > self.dim:
            raise ValueError("dimension out of range")
        if k == 0:
            return [self.zero]
        pool = self.lines(self.singular if isotropic else self.everything)
        level = {self.line(v) for v in pool}
        for _ in range(k - 1):
            nxt = set()
            for s in level:
                room = self.perp(s) & self.singular if isotropic else self.everything
                for v in pool:
                    if not s >> v & 1 and room >> v & 1:
                        t = self.join(s, self.line(v))
                        if not isotropic or self.is_isotropic(t):
                            nxt.add(t)
            level = nxt
        return sorted(level, key=self.rref)


def enumerate_subspaces(q: int, dim: int, k: int, form: str | None = None, isotropic_only: bool = False) -> list[FqMatrix]:
    space = FiniteSpace(q, dim, form)
    if isotropic_only and form is None:
        raise ValueError("isotropy needs a form")
    return [space.rref(m) for m in space.subspaces(k, isotropic_only)]


def grassmann_count(q: int, dim: int, k: int) -> int:
    """Gaussian binomial coefficient, the number of k-subspaces."""
    num = den = 1
    for i in range(k):
        num *= q ** (dim - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


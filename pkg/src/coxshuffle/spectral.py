"""Transition operators on chambers and verification of shuffle spectra."""

from __future__ import annotations

import csv
import functools
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm

import numpy as np

from coxshuffle import linalg
from coxshuffle.algebra import (
    AlgebraElement,
    complex_data,
    get_family,
    idempotent_system,
    shuffle,
)
from coxshuffle.faces import Face, chambers, format_face, product
from coxshuffle.numbers import poly_from_roots, signed_stirling, stirling2


@dataclass(frozen=True)
class ActionTable:
    """``table[f, c]`` is the index of the chamber ``faces[f] * chambers[c]``."""

    family: str
    n: int
    faces: tuple[Face, ...]
    chambers: tuple[Face, ...]
    face_index: dict[Face, int]
    chamber_index: dict[Face, int]
    table: np.ndarray


@functools.lru_cache(maxsize=None)
def action_table(family: str, n: int) -> ActionTable:
    faces = complex_data(family, n).faces
    chs = chambers(family, n)
    cidx = {c: i for i, c in enumerate(chs)}
    table = np.empty((len(faces), len(chs)), dtype=np.int32)
    for i, f in enumerate(faces):
        table[i] = [cidx[product(f, c)] for c in chs]
    return ActionTable(family, n, faces, chs, {f: i for i, f in enumerate(faces)}, cidx, table)


@dataclass(frozen=True)
class TransitionOperator:
    """Exact matrix ``numer / denominator`` of left multiplication on chambers.

    Entry ``(c', c)`` is the total coefficient of faces ``x`` with ``x c == c'``.
    """

    family: str
    n: int
    numer: np.ndarray
    denominator: int
    source: AlgebraElement | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.numer.shape[0]

    def entry(self, row: int, col: int) -> Fraction:
        return Fraction(int(self.numer[row, col]), self.denominator)

    def matrix(self) -> list[list[Fraction]]:
        return [[Fraction(int(v), self.denominator) for v in row] for row in self.numer]

    def column_sums(self) -> list[Fraction]:
        return [Fraction(int(v), self.denominator) for v in self.numer.sum(axis=0)]

    def stochastic(self) -> np.ndarray:
        """Float matrix with every column summing to one."""
        total = self.numer.sum(axis=0)[0]
        return self.numer.astype(float) / float(total)

    def __matmul__(self, other: "TransitionOperator") -> "TransitionOperator":
        if (self.family, self.n) != (other.family, other.n):
            raise ValueError("operators on different complexes")
        a, b = self.numer, other.numer
        bound = int(np.abs(a).sum(axis=0).max()) * int(np.abs(b).sum(axis=0).max())
        if bound >= 2**62:
            a, b = a.astype(object), b.astype(object)
        return TransitionOperator(self.family, self.n, a @ b, self.denominator * other.denominator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TransitionOperator):
            return NotImplemented
        return (
            (self.family, self.n) == (other.family, other.n)
            and np.array_equal(
                np.asarray(self.numer, dtype=object) * other.denominator,
                np.asarray(other.numer, dtype=object) * self.denominator,
            )
        )

    __hash__ = None  # type: ignore[assignment]

    def to_csv(self) -> str:
        """Rows of ``num/den`` entries; header lists chambers in index order."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row"] + [format_face(c) for c in chambers(self.family, self.n)])
        for i, row in enumerate(self.matrix()):
            w.writerow([i] + [f"{v.numerator}/{v.denominator}" for v in row])
        return buf.getvalue()


def transition_operator(x: AlgebraElement) -> TransitionOperator:
    at = action_table(x.family, x.n)
    o = x._cheap_orbit()
    if o is not None:
        orbits = complex_data(x.family, x.n).orbits
        coeffs = [(at.face_index[f], c) for J, c in o.items() for f in orbits[J]]
    else:
        coeffs = [(at.face_index[f], c) for f, c in x.terms.items()]
    den = lcm(*(c.denominator for _, c in coeffs)) if coeffs else 1
    ints = [(i, int(c * den)) for i, c in coeffs]
    big = sum(abs(v) for _, v in ints) >= 2**62
    m = np.zeros((len(at.chambers),) * 2, dtype=object if big else np.int64)
    cols = np.arange(len(at.chambers))
    for i, v in ints:
        m[at.table[i], cols] += v
    return TransitionOperator(x.family, x.n, m, den, x)


# ------------------------------------------------------------------ spectra


def predicted_eigenvalues(family_id: str, n: int, a: int) -> list[int]:
    """Distinct character values of ``S_a``, in increasing order.

    For the B and D riffle shuffles all 2n characters are used, even where
    a component vanishes.
    """
    fam = get_family(family_id)
    values = {e.character(family_id, a) for e in idempotent_system(family_id, n)}
    if fam.id == "riffleD":
        values.add(Fraction(0 if a % 2 == 0 else a ** (n - 1)))
    out = sorted(values)
    assert all(v.denominator == 1 for v in out)
    return [int(v) for v in out]


def polynomial_text(roots: list[int]) -> str:
    parts = []
    for r in roots:
        parts.append("x" if r == 0 else f"(x-{r})" if r > 0 else f"(x+{-r})")
    return "".join(parts)


@dataclass
class SpectrumReport:
    family: str
    n: int
    a: int
    eigenvalues: list[int]
    annihilation: bool
    multiplicities: list[int]
    redundant_factors: list[int]
    chamber_count: int
    polynomial: str
    certified: bool

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "a": self.a,
            "eigenvalues": self.eigenvalues,
            "multiplicities": self.multiplicities,
            "annihilation": self.annihilation,
            "redundant_factors": self.redundant_factors,
            "chamber_count": self.chamber_count,
            "polynomial": self.polynomial,
            "certified": self.certified,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _annihilates(x: AlgebraElement, roots: list[int]) -> bool:
    acc = AlgebraElement.one(x.family, x.n)
    for r in roots:
        acc = acc * (x - r)
        if acc.is_zero():
            return True
    return acc.is_zero()


def eigen_nullities(op: TransitionOperator, eigenvalues: list[int]) -> tuple[list[int], bool]:
    """Nullity of ``M - lambda`` for each eigenvalue.

    Ranks are taken modulo a large prime.  A modular rank never exceeds the
    rational one, so modular nullities are upper bounds; when they add up to
    exactly the matrix size and the operator is known to be diagonalizable
    with these eigenvalues, every bound is attained.  The flag returned says
    whether that certificate held (for some prime tried).
    """
    size = op.size
    eye = np.eye(size, dtype=np.int64)
    last: list[int] = []
    for p in linalg.PRIMES:
        base = np.asarray(op.numer, dtype=object) % p
        nulls = []
        for lam in eigenvalues:
            shifted = (base - (lam * op.denominator % p) * eye) % p
            nulls.append(size - linalg.rank_mod_p(shifted.astype(np.int64), p))
        if sum(nulls) == size:
            return nulls, True
        last = nulls
    return last, False


def verify_minimal_polynomial(family_id: str, n: int, a: int, *, multiplicities: bool = True) -> SpectrumReport:
    """Check that ``prod (S_a - lambda)`` over the predicted eigenvalues is zero,
    record which factors can be dropped, and count eigenvalue multiplicities
    on the chamber operator."""
    fam = get_family(family_id)
    x = shuffle(family_id, n, a)
    roots = predicted_eigenvalues(family_id, n, a)
    ok = _annihilates(x, roots)
    redundant = [r for r in roots if _annihilates(x, [s for s in roots if s != r])] if ok else []
    size = len(chambers(fam.complex, n))
    mults: list[int] = []
    certified = False
    if multiplicities:
        mults, certified = eigen_nullities(transition_operator(x), roots)
        certified = certified and ok
    return SpectrumReport(family_id, n, a, roots, ok, mults, redundant, size, polynomial_text(roots), certified)


def _fold(family_id: str, n: int, coef) -> list[Fraction]:
    """Coefficients of ``S_m`` on the independent ``sigma_j``, after applying
    the family's identification of ``sigma_n``."""
    row = [Fraction(coef(j)) for j in range(n + 1)]
    if family_id == "sideA":
        row[n - 1] += row[n]
        return row[:n]
    if family_id in ("twoSidedA", "sideD"):
        row[n - 1] += 2 * row[n]
        return row[:n]
    return row


def identity_residuals(family_id: str, n: int, a: int) -> list[Fraction]:
    """Coefficients of the minimal polynomial evaluated at ``S_a``, computed
    from coefficient tables alone.

    Additive families: ``sum_i P_i S(a i, j)`` for each independent ``j``,
    with plain or signed Stirling numbers.  For riffleA the binomial version
    ``sum_i P_i C(a^i, j)``.  All residuals vanish iff the identity holds.
    """
    fam = get_family(family_id)
    roots = predicted_eigenvalues(family_id, n, a)
    poly = poly_from_roots(roots)
    if fam.id == "riffleA":
        return [
            Fraction(sum(p * comb(a**i, j) for i, p in enumerate(poly)))
            for j in range(1, n + 1)
        ]
    if fam.arity != "additive":
        raise ValueError(f"no coefficient identity for {family_id}")
    table = stirling2 if fam.id == "sideA" else signed_stirling
    total = [Fraction(0)] * len(_fold(family_id, n, lambda j: 0))
    for i, p in enumerate(poly):
        row = _fold(family_id, n, lambda j: table(a * i, j))
        total = [t + p * r for t, r in zip(total, row)]
    return total


def stirling_identity_check(family_id: str, n: int, a: int) -> bool:
    return all(r == 0 for r in identity_residuals(family_id, n, a))

"""Exact elements of the face semigroup algebra, the invariant elements
``sigma_J``, the shuffle families and their idempotents.

An :class:`AlgebraElement` is a sparse map from faces to rationals.  Elements
that are invariant under the Weyl group (constant on every orbit of faces of
a given type) additionally carry their orbit coefficients, and products of
two such elements are computed from precomputed structure constants instead
of face by face.
"""

from __future__ import annotations

import functools
import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping

from coxshuffle import linalg
from coxshuffle.faces import (
    DimensionError,
    Face,
    FaceType,
    chambers,
    enumerate_faces,
    face_type,
    format_face,
    identity,
    labels,
    make_type,
    parse_face,
    product,
    sort_type,
)
from coxshuffle.numbers import falling_coefficients, signed_stirling, stirling2

Number = int | Fraction


# ---------------------------------------------------------------- complexes


@dataclass
class ComplexData:
    """Faces of one complex grouped by type, plus lazily built structure
    constants of the invariant subalgebra."""

    family: str
    n: int
    faces: tuple[Face, ...]
    type_of: dict[Face, FaceType]
    orbits: dict[FaceType, tuple[Face, ...]]
    types: tuple[FaceType, ...]
    _constants: dict | None = field(default=None, repr=False)

    def type_key(self, J: FaceType) -> tuple:
        order = {s: i for i, s in enumerate(labels(self.family, self.n))}
        return (len(J), sorted(order[s] for s in J))

    @property
    def constants(self) -> dict[tuple[FaceType, FaceType], dict[FaceType, int]]:
        """``c[I, J][K]``: coefficient of ``sigma_K`` in ``sigma_I sigma_J``.

        Every face ``F`` of type ``I`` appearing in a product ``F H == G`` is a
        face of ``G``, so fixing one chamber ``C`` and its faces ``G_K`` the
        coefficient equals ``#{H of type J : G_I H == G_K}``.
        """
        if self._constants is None:
            base = chambers(self.family, self.n)[0]
            below = {f: self.type_of[f] for f in self.faces if product(f, base) == base}
            table: dict = defaultdict(lambda: defaultdict(int))
            for f, tf in below.items():
                for h in self.faces:
                    p = product(f, h)
                    tp = below.get(p)
                    if tp is not None:
                        table[tf, self.type_of[h]][tp] += 1
            self._constants = {k: dict(v) for k, v in table.items()}
        return self._constants


@functools.lru_cache(maxsize=None)
def complex_data(family: str, n: int) -> ComplexData:
    faces = tuple(enumerate_faces(family, n))
    type_of = {f: face_type(f) for f in faces}
    orbits: dict[FaceType, list[Face]] = defaultdict(list)
    for f in faces:
        orbits[type_of[f]].append(f)
    data = ComplexData(family, n, faces, type_of, {k: tuple(v) for k, v in orbits.items()}, ())
    data.types = tuple(sorted(orbits, key=data.type_key))
    return data


def type_text(family: str, n: int, J: FaceType) -> str:
    return "{" + ",".join(sort_type(family, n, J)) + "}"


# ----------------------------------------------------------------- elements

_NOT_INVARIANT = object()


def _clean(d: Mapping) -> dict:
    return {k: Fraction(v) for k, v in d.items() if v != 0}


class AlgebraElement:
    """Immutable element of the semigroup algebra of one complex."""

    __slots__ = ("family", "n", "_terms", "_orbit")

    def __init__(self, family: str, n: int, terms: Mapping[Face, Number] | None = None):
        self.family = family
        self.n = n
        self._terms = _clean(terms or {})
        for f in self._terms:
            if f.family != family or f.n != n:
                raise DimensionError(f"face {format_face(f)} does not belong to {family}{n}")
        self._orbit = None

    @classmethod
    def from_orbits(cls, family: str, n: int, coeffs: Mapping[FaceType, Number]) -> "AlgebraElement":
        """Invariant element ``sum_J coeffs[J] * sigma_J``."""
        labels(family, n)
        allowed = set(labels(family, n))
        for J in coeffs:
            if not set(J) <= allowed:
                raise ValueError(f"invalid labels {sorted(set(J) - allowed)} for {family}{n}")
        x = cls.__new__(cls)
        x.family, x.n = family, n
        x._terms = None
        x._orbit = {frozenset(J): v for J, v in _clean(coeffs).items()}
        return x

    @classmethod
    def one(cls, family: str, n: int) -> "AlgebraElement":
        return cls.from_orbits(family, n, {frozenset(): 1})

    @classmethod
    def zero(cls, family: str, n: int) -> "AlgebraElement":
        return cls.from_orbits(family, n, {})

    @classmethod
    def face(cls, f: Face, coefficient: Number = 1) -> "AlgebraElement":
        return cls(f.family, f.n, {f: coefficient})

    # -- views

    @property
    def terms(self) -> dict[Face, Fraction]:
        if self._terms is None:
            orbits = complex_data(self.family, self.n).orbits
            self._terms = {f: c for J, c in self._orbit.items() for f in orbits[J]}
        return dict(self._terms)

    def orbit_coefficients(self) -> dict[FaceType, Fraction] | None:
        """Coefficients on the ``sigma_J`` basis, or None if not invariant."""
        if self._orbit is None:
            data = complex_data(self.family, self.n)
            grouped: dict[FaceType, list] = defaultdict(list)
            for f, c in self._terms.items():
                grouped[data.type_of[f]].append(c)
            result: dict | object = {}
            for J, cs in grouped.items():
                if len(cs) != len(data.orbits[J]) or len(set(cs)) != 1:
                    result = _NOT_INVARIANT
                    break
                result[J] = cs[0]
            self._orbit = result
        return None if self._orbit is _NOT_INVARIANT else dict(self._orbit)

    def is_invariant(self) -> bool:
        return self.orbit_coefficients() is not None

    def _cheap_orbit(self) -> dict | None:
        # orbit form only when known without a scan of the terms
        o = self._orbit
        return o if isinstance(o, dict) else None

    def coefficient(self, f: Face) -> Fraction:
        if self._terms is not None:
            return self._terms.get(f, Fraction(0))
        return self._orbit.get(face_type(f), Fraction(0))

    def coefficient_sum(self) -> Fraction:
        o = self._cheap_orbit()
        if o is not None:
            orbits = complex_data(self.family, self.n).orbits
            return sum((c * len(orbits[J]) for J, c in o.items()), Fraction(0))
        return sum(self._terms.values(), Fraction(0))

    def support_ranks(self) -> set[int]:
        o = self._cheap_orbit()
        if o is not None:
            return {len(J) for J in o}
        return {len(face_type(f)) for f in self._terms}

    def __len__(self) -> int:
        if self._terms is not None:
            return len(self._terms)
        orbits = complex_data(self.family, self.n).orbits
        return sum(len(orbits[J]) for J in self._orbit)

    def is_zero(self) -> bool:
        o = self._cheap_orbit()
        return not o if o is not None else not self._terms

    # -- arithmetic

    def _check(self, other: "AlgebraElement") -> None:
        if (self.family, self.n) != (other.family, other.n):
            raise DimensionError(f"{self.family}{self.n} vs {other.family}{other.n}")

    def _combine(self, other: "AlgebraElement", sign: int) -> "AlgebraElement":
        self._check(other)
        a, b = self._cheap_orbit(), other._cheap_orbit()
        if a is not None and b is not None:
            out = dict(a)
            for J, c in b.items():
                out[J] = out.get(J, 0) + sign * c
            return AlgebraElement.from_orbits(self.family, self.n, out)
        out = self.terms
        for f, c in other.terms.items():
            out[f] = out.get(f, 0) + sign * c
        return AlgebraElement(self.family, self.n, out)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = other * AlgebraElement.one(self.family, self.n)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = other * AlgebraElement.one(self.family, self.n)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s: Number) -> "AlgebraElement":
        s = Fraction(s)
        o = self._cheap_orbit()
        if o is not None:
            return AlgebraElement.from_orbits(self.family, self.n, {J: s * c for J, c in o.items()})
        return AlgebraElement(self.family, self.n, {f: s * c for f, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.multiply(other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, s: Number) -> "AlgebraElement":
        return self.scale(1 / Fraction(s))

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = AlgebraElement.one(self.family, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def multiply(self, other: "AlgebraElement", *, route: str = "auto") -> "AlgebraElement":
        """Product in the semigroup algebra.

        ``route`` is ``"faces"`` (bilinear extension of the face product),
        ``"orbits"`` (structure constants; both factors must be invariant) or
        ``"auto"``, which uses the orbit route whenever both factors are
        already stored in orbit form.
        """
        self._check(other)
        if route not in ("auto", "faces", "orbits"):
            raise ValueError(f"unknown route {route!r}")
        a, b = self._cheap_orbit(), other._cheap_orbit()
        if route == "orbits":
            a, b = self.orbit_coefficients(), other.orbit_coefficients()
            if a is None or b is None:
                raise ValueError("the orbit route needs invariant factors")
        if route != "faces" and a is not None and b is not None:
            constants = complex_data(self.family, self.n).constants
            out: dict[FaceType, Fraction] = defaultdict(Fraction)
            for I, x in a.items():
                for J, y in b.items():
                    for K, c in constants.get((I, J), {}).items():
                        out[K] += x * y * c
            return AlgebraElement.from_orbits(self.family, self.n, out)
        out2: dict[Face, Fraction] = defaultdict(Fraction)
        right = list(other.terms.items())
        for f, x in self.terms.items():
            for g, y in right:
                out2[product(f, g)] += x * y
        return AlgebraElement(self.family, self.n, out2)

    # -- comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = other * AlgebraElement.one(self.family, self.n)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if (self.family, self.n) != (other.family, other.n):
            return False
        a, b = self._cheap_orbit(), other._cheap_orbit()
        if a is not None and b is not None:
            return a == b
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def describe(self) -> str:
        """Readable form: ``sigma`` sums when invariant, else faces."""
        o = self.orbit_coefficients() if len(self) < 50_000 else self._cheap_orbit()
        if o is not None:
            data = complex_data(self.family, self.n)
            parts = [
                f"{c}*sigma{type_text(self.family, self.n, J)}"
                for J, c in sorted(o.items(), key=lambda kv: data.type_key(kv[0]))
            ]
        else:
            parts = [f"{c}*{format_face(f)}" for f, c in sorted(self.terms.items(), key=lambda kv: format_face(kv[0]))]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        text = self.describe()
        if len(text) > 200:
            text = text[:200] + "..."
        return f"AlgebraElement({self.family}{self.n}: {text})"

    # -- serialization

    def to_dict(self) -> dict:
        rows = sorted((format_face(f), c) for f, c in self.terms.items())
        return {
            "family": self.family,
            "n": self.n,
            "terms": [{"face": t, "num": c.numerator, "den": c.denominator} for t, c in rows],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: Mapping) -> "AlgebraElement":
        family, n = d["family"], int(d["n"])
        terms = {}
        for row in d["terms"]:
            f = parse_face(row["face"])
            if f.family != family or f.n != n:
                raise DimensionError(f"face {row['face']} does not belong to {family}{n}")
            terms[f] = Fraction(int(row["num"]), int(row["den"]))
        return cls(family, n, terms)

    @classmethod
    def from_json(cls, text: str) -> "AlgebraElement":
        return cls.from_dict(json.loads(text))


def element_add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def element_scale(x: AlgebraElement, s: Number) -> AlgebraElement:
    return x.scale(s)


def element_multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x.multiply(y)


def coefficient_sum(x: AlgebraElement) -> Fraction:
    return x.coefficient_sum()


def sigma_J(family: str, n: int, J: Iterable[str]) -> AlgebraElement:
    """Sum of all faces of type ``J``."""
    return AlgebraElement.from_orbits(family, n, {make_type(family, n, J): 1})


def rank_sum(family: str, n: int, j: int) -> AlgebraElement:
    """Sum of all faces with ``j`` vertices."""
    return AlgebraElement.from_orbits(
        family, n, {frozenset(J): 1 for J in itertools.combinations(labels(family, n), j)}
    )


# ----------------------------------------------------------------- families


@dataclass(frozen=True)
class ShuffleFamily:
    id: str
    complex: str
    arity: str  # "additive" or "multiplicative"
    description: str

    @property
    def min_index(self) -> int:
        return 0 if self.arity == "additive" else 1

    def valid_index(self, a: int) -> bool:
        return isinstance(a, int) and a >= self.min_index

    def index_set(self, limit: int) -> range:
        """Indices ``a`` up to ``limit`` inclusive."""
        return range(self.min_index, limit + 1)


FAMILIES: dict[str, ShuffleFamily] = {
    f.id: f
    for f in (
        ShuffleFamily("sideA", "A", "additive", "remove cards and put them on top, one at a time"),
        ShuffleFamily("twoSidedA", "A", "additive", "remove cards and put each on top or at the bottom"),
        ShuffleFamily("riffleA", "A", "multiplicative", "cut into a piles and riffle them together"),
        ShuffleFamily("sideB", "B", "additive", "signed side shuffle with card flips"),
        ShuffleFamily("riffleB", "B", "multiplicative", "signed riffle shuffle, even and odd numbers of piles"),
        ShuffleFamily("sideD", "D", "additive", "side shuffle on the D complex"),
        ShuffleFamily("riffleD", "D", "multiplicative", "riffle shuffle on the D complex"),
    )
}
FAMILY_IDS = tuple(FAMILIES)


def get_family(family_id: str) -> ShuffleFamily:
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise ValueError(f"unknown shuffle family {family_id!r}; expected one of {FAMILY_IDS}") from None


def _chain(family: str, n: int, j: int) -> FaceType:
    """``{s_1, ..., s_j}`` with the last label of B (``t``) at position n."""
    names = labels(family, n)
    return frozenset(names[:j])


def _orbit_sum(family: str, n: int, types: Mapping[FaceType, Number]) -> AlgebraElement:
    return AlgebraElement.from_orbits(family, n, types)


def _sigma_range(fam: ShuffleFamily, n: int) -> range:
    return range(0, n) if fam.id == "riffleA" else range(0, n + 1)


def sigma_j(family_id: str, n: int, j: int) -> AlgebraElement:
    """The family's ``sigma_j`` (for riffleB and riffleD, the even part)."""
    fam = get_family(family_id)
    if j not in _sigma_range(fam, n):
        raise ValueError(f"j={j} outside the valid range for {family_id} with n={n}")
    c = fam.complex
    one = AlgebraElement.one(c, n)
    if j == 0:
        return one
    if fam.id in ("sideA", "sideB"):
        if fam.id == "sideA" and j == n:
            j = n - 1
        return sigma_J(c, n, _chain(c, n, j))
    if fam.id == "twoSidedA":
        if j == n:
            return 2 * sigma_j(family_id, n, n - 1)
        # J_{j,k}: the labels s_1..s_k and s_{n-j+k}..s_{n-1}
        coeffs: dict[FaceType, int] = defaultdict(int)
        for k in range(j + 1):
            J = {f"s{i}" for i in range(1, k + 1)} | {f"s{i}" for i in range(n - j + k, n)}
            coeffs[frozenset(J)] += comb(j, k)
        return _orbit_sum(c, n, coeffs)
    if fam.id == "riffleA":
        return rank_sum(c, n, j)
    if fam.id == "sideD":
        if j == n:
            return 2 * sigma_j(family_id, n, n - 1)
        if j == n - 1:
            return sigma_J(c, n, labels(c, n))
        return sigma_J(c, n, _chain(c, n, j))
    names = labels(c, n)
    if fam.id == "riffleB":
        return _orbit_sum(c, n, {frozenset(J): 1 for J in itertools.combinations(names, j) if "t" in J})
    # riffleD: types containing both u and v are counted twice
    coeffs = defaultdict(int)
    for J in itertools.combinations(names, j):
        coeffs[frozenset(J)] += ("u" in J) + ("v" in J)
    return _orbit_sum(c, n, coeffs)


def sigma_prime(family_id: str, n: int, j: int) -> AlgebraElement:
    """Odd part ``sigma'_j`` of the riffle shuffles of types B and D."""
    fam = get_family(family_id)
    if fam.id not in ("riffleB", "riffleD"):
        raise ValueError(f"{family_id} has no odd part")
    if not 0 <= j <= n:
        raise ValueError(f"j={j} outside 0..{n}")
    c = fam.complex
    if j == 0:
        return AlgebraElement.one(c, n)
    if fam.id == "riffleB":
        return rank_sum(c, n, j)
    names = labels(c, n)
    extra: dict[FaceType, int] = {}
    for J in itertools.combinations(names, j):
        if "u" not in J and "v" not in J:
            extra[frozenset(J)] = 1
    for J in itertools.combinations(names, j + 1):
        if "u" in J and "v" in J:
            extra[frozenset(J)] = 1
    return sigma_j(family_id, n, j) + _orbit_sum(c, n, extra)


def shuffle(family_id: str, n: int, a: int) -> AlgebraElement:
    """The shuffle element ``S_a`` (unnormalised)."""
    fam = get_family(family_id)
    if not fam.valid_index(a):
        raise ValueError(f"invalid shuffle index a={a} for {family_id}")
    total = AlgebraElement.zero(fam.complex, n)
    if fam.id == "sideA":
        for j in range(n + 1):
            total = total + stirling2(a, j) * sigma_j(family_id, n, j)
    elif fam.id in ("twoSidedA", "sideB", "sideD"):
        for j in range(n + 1):
            total = total + signed_stirling(a, j) * sigma_j(family_id, n, j)
    elif fam.id == "riffleA":
        for j in range(1, n + 1):
            total = total + comb(a, j) * sigma_j(family_id, n, j - 1)
    elif a % 2 == 0:
        for j in range(1, n + 1):
            total = total + comb(a // 2, j) * sigma_j(family_id, n, j)
    else:
        for j in range(n + 1):
            total = total + comb(a // 2, j) * sigma_prime(family_id, n, j)
    return total


# -------------------------------------------------------------- idempotents


@dataclass(frozen=True)
class Idempotent:
    """One member of a family's idempotent system and its character."""

    label: str
    index: int
    odd: bool
    element: AlgebraElement

    def character(self, family_id: str, a: int) -> Fraction:
        return character_value(family_id, self.index, a, odd=self.odd)


def closed_form_idempotents(family_id: str, n: int) -> dict[str, AlgebraElement]:
    """Every ``e_i`` given by the closed formulas, degenerate ones included.

    Keys are ``"e0", "e1", ...`` and, for the B and D riffle shuffles, also
    ``"e'0", "e'1", ...``.
    """
    fam = get_family(family_id)
    out: dict[str, AlgebraElement] = {}
    sig = functools.partial(sigma_j, family_id, n)
    if fam.id == "sideA":
        for i in range(n + 1):
            out[f"e{i}"] = sum(
                ((-1) ** (j - i) * Fraction(comb(j, i), factorial(j)) * sig(j) for j in range(i, n + 1)),
                AlgebraElement.zero("A", n),
            )
    elif fam.id in ("twoSidedA", "sideB", "sideD"):
        for i in range(n + 1):
            out[f"e{i}"] = sum(
                (
                    (-1) ** (j - i) * Fraction(comb(j, i), 2**j * factorial(j)) * sig(j)
                    for j in range(i, n + 1)
                ),
                AlgebraElement.zero(fam.complex, n),
            )
    elif fam.id == "riffleA":
        for i in range(1, n + 1):
            out[f"e{i}"] = sum(
                (
                    Fraction(falling_coefficients(j)[i], factorial(j)) * sig(j - 1)
                    for j in range(i, n + 1)
                ),
                AlgebraElement.zero("A", n),
            )
    else:
        zero = AlgebraElement.zero(fam.complex, n)
        for i in range(1, n + 1):
            out[f"e{i}"] = sum(
                (
                    Fraction(falling_coefficients(j, step=2)[i], 2**j * factorial(j)) * sig(j)
                    for j in range(i, n + 1)
                ),
                zero,
            )
        for i in range(n + 1):
            out[f"e'{i}"] = sum(
                (
                    Fraction(falling_coefficients(j, step=2, offset=1)[i], 2**j * factorial(j))
                    * sigma_prime(family_id, n, j)
                    for j in range(i, n + 1)
                ),
                zero,
            )
    return out


def idempotent_system(family_id: str, n: int) -> list[Idempotent]:
    """Complete system of orthogonal idempotents, degenerate members dropped."""
    fam = get_family(family_id)
    raw = closed_form_idempotents(family_id, n)
    if fam.id in ("sideA", "twoSidedA", "sideD"):
        keep = [i for i in range(n + 1) if i != n - 1]
        return [Idempotent(f"e{i}", i, False, raw[f"e{i}"]) for i in keep]
    if fam.id == "sideB":
        return [Idempotent(f"e{i}", i, False, raw[f"e{i}"]) for i in range(n + 1)]
    if fam.id == "riffleA":
        return [Idempotent(f"e{i}", i, False, raw[f"e{i}"]) for i in range(1, n + 1)]
    system = [Idempotent(f"e{i}", i, False, raw[f"e{i}"]) for i in range(1, n + 1)]
    # in type D the odd and even parts also meet at rank n-1:
    # sigma'_{n-1} = sigma_{n-1} + sigma_n / 2, hence e'_{n-1} == e_{n-1}
    top = n if fam.id == "riffleB" else n - 1
    for i in range(top):
        diff = raw[f"e'{i}"] - raw[f"e{i}"] if i else raw["e'0"]
        system.append(Idempotent(f"e'{i}-e{i}", i, True, diff))
    return system


def idempotents(family_id: str, n: int) -> list[AlgebraElement]:
    return [e.element for e in idempotent_system(family_id, n)]


def character_value(family_id: str, i: int, a: int, *, odd: bool = False) -> Fraction:
    """Scalar by which ``S_a`` acts on the ``i``-th idempotent component.

    For riffleB and riffleD, ``odd=True`` selects the characters that
    vanish on even shuffles.
    """
    fam = get_family(family_id)
    if not fam.valid_index(a) or i < 0:
        raise ValueError(f"invalid character arguments i={i}, a={a} for {family_id}")
    if odd and fam.id not in ("riffleB", "riffleD"):
        raise ValueError(f"{family_id} has no odd characters")
    if fam.id == "sideA":
        return Fraction(i**a)
    if fam.id in ("twoSidedA", "sideB", "sideD"):
        return Fraction((2 * i) ** a)
    if odd and a % 2 == 0:
        return Fraction(0)
    return Fraction(a**i)


def character_decomposition(family_id: str, n: int, a: int) -> AlgebraElement:
    """``sum_i chi_i(S_a) e_i`` over the idempotent system."""
    fam = get_family(family_id)
    total = AlgebraElement.zero(fam.complex, n)
    for e in idempotent_system(family_id, n):
        total = total + e.character(family_id, a) * e.element
    return total


# ------------------------------------------------------------------- axioms

VARIANTS = ("riffleB-even", "riffleB-odd", "riffleD-even", "riffleD-odd")


@dataclass
class AxiomReport:
    family: str
    n: int
    dimension: int
    label_count: int
    basis: list[str]
    basis_ranks: list[list[int]]
    results: dict[str, bool]
    notes: dict[str, str]

    @property
    def all_pass(self) -> bool:
        return all(self.results.values())


def _split_variant(family_id: str) -> tuple[str, str]:
    if family_id in VARIANTS:
        base, part = family_id.split("-")
        return base, part
    get_family(family_id)
    if family_id in ("riffleB", "riffleD"):
        return family_id, "double"
    return family_id, "single"


def _family_basis(base: str, part: str, n: int) -> list[tuple[str, AlgebraElement]]:
    fam = get_family(base)
    if part == "single":
        top = n if fam.id == "sideB" else n - 1
        return [(f"sigma_{j}", sigma_j(base, n, j)) for j in range(top + 1)]
    if part == "even":
        return [(f"sigma_{j}", sigma_j(base, n, j)) for j in range(n + 1)]
    if part == "odd":
        return [(f"sigma'_{j}", sigma_prime(base, n, j)) for j in range(n + 1)]
    out = [("sigma_0", sigma_j(base, n, 0))]
    for j in range(1, n):
        out += [(f"sigma_{j}", sigma_j(base, n, j)), (f"sigma'_{j}", sigma_prime(base, n, j))]
    out.append((f"sigma_{n}", sigma_j(base, n, n)))
    return out


def _generators(base: str, part: str, n: int) -> list[AlgebraElement]:
    if part == "odd":
        return [sigma_prime(base, n, 1)]
    if part == "double":
        return [sigma_j(base, n, 1), sigma_prime(base, n, 1)]
    return [sigma_j(base, n, 1)]


def _shuffle_indices(base: str, part: str, count: int) -> list[int]:
    fam = get_family(base)
    if part == "even":
        return [1] + [2 * b for b in range(1, count + 1)]
    if part == "odd":
        return [2 * b + 1 for b in range(count + 1)]
    return list(fam.index_set(fam.min_index + 2 * count))


def _vector(x: AlgebraElement, types: tuple[FaceType, ...]) -> list[Fraction]:
    o = x.orbit_coefficients()
    if o is None:
        raise ValueError("expected an invariant element")
    return [o.get(J, Fraction(0)) for J in types]


def _span_closure(gens: list[AlgebraElement], one: AlgebraElement, types) -> list[AlgebraElement]:
    """A basis of the subalgebra generated by ``gens``."""
    basis = [one]
    vecs = [_vector(one, types)]
    frontier = list(gens)
    while frontier:
        new = []
        for x in frontier:
            v = _vector(x, types)
            if linalg.rank(vecs + [v]) > len(vecs):
                basis.append(x)
                vecs.append(v)
                new.append(x)
        frontier = [b * g for b in new for g in gens]
    return basis


def check_shuffle_algebra_axioms(family_id: str, n: int) -> AxiomReport:
    """Check the four defining conditions of a shuffle algebra.

    ``family_id`` may also name one parity of a B or D riffle shuffle, e.g.
    ``"riffleD-odd"``; the bare ids ``riffleB``/``riffleD`` mean both
    parities together.
    """
    base, part = _split_variant(family_id)
    fam = get_family(base)
    c = fam.complex
    types = complex_data(c, n).types
    one = AlgebraElement.one(c, n)
    r = len(labels(c, n))
    gens = _generators(base, part, n)
    algebra_basis = _span_closure(gens, one, types)
    dim = len(algebra_basis)
    alg_vecs = [_vector(x, types) for x in algebra_basis]
    results: dict[str, bool] = {}
    notes: dict[str, str] = {}

    results["dimension"] = dim <= r + 1
    notes["dimension"] = f"dim A = {dim}, rank of the complex = {r}, bound {r + 1}"

    named = _family_basis(base, part, n)
    vecs = [_vector(x, types) for _, x in named]
    independent = linalg.rank(vecs) == len(vecs)
    spans = linalg.rank(vecs + alg_vecs) == len(vecs) == dim
    ranks = [sorted(x.support_ranks()) for _, x in named]
    homogeneous = all(len(rk) == 1 for rk in ranks)
    distinct = homogeneous and len({rk[0] for rk in ranks}) == len(ranks)
    results["graded_basis"] = independent and spans and homogeneous and distinct
    bad = [name for (name, _), rk in zip(named, ranks) if len(rk) != 1]
    notes["graded_basis"] = (
        f"independent={independent}, spans A={spans}, "
        f"ranks={[rk for rk in ranks]}"
        + (f", mixed ranks in {bad}" if bad else "")
        + ("" if distinct or bad else ", repeated ranks")
    )

    powers = _span_closure(gens[:1], one, types)
    results["single_generator"] = len(powers) == dim
    notes["single_generator"] = f"dim k[{named[1][0]}] = {len(powers)} vs dim A = {dim}"

    idx = _shuffle_indices(base, part, dim + 1)
    shuffles = [shuffle(base, n, a) for a in idx]
    svecs = [_vector(s, types) for s in shuffles]
    inside = linalg.rank(alg_vecs + svecs) == dim
    expressible = all(linalg.solve(svecs, v) is not None for v in vecs)
    results["spanned_by_shuffles"] = inside and expressible and linalg.rank(svecs) == dim
    notes["spanned_by_shuffles"] = f"S_a for a in {idx[0]}..{idx[-1]} span A: {results['spanned_by_shuffles']}"

    return AxiomReport(family_id, n, dim, r, [name for name, _ in named], ranks, results, notes)


def express_in_shuffles(family_id: str, n: int, x: AlgebraElement, indices: Iterable[int]) -> dict[int, Fraction] | None:
    """Coefficients writing ``x`` as a combination of ``S_a``, ``a`` in ``indices``."""
    fam = get_family(family_id)
    types = complex_data(fam.complex, n).types
    idx = list(indices)
    cols = [_vector(shuffle(family_id, n, a), types) for a in idx]
    sol = linalg.solve(cols, _vector(x, types))
    return None if sol is None else dict(zip(idx, sol))



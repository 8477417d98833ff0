"""Faces of the Coxeter complexes of types A_{n-1}, B_n and D_n as ordered
set partitions, with the projection product.

Letters are the integers ``1..n`` and their negatives ``-1..-n`` (the barred
letters).  A type B or D face is stored by the first half of its
anti-symmetric partition: the signed blocks followed by the zero (or
central) block.  The second half is the negation of the first in reverse
order and is rebuilt when needed.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

FAMILIES = ("A", "B", "D")


class DimensionError(ValueError):
    """Raised when faces of different complexes are combined."""


def letter_key(letter: int) -> tuple[int, bool]:
    return (abs(letter), letter < 0)


def _sorted_block(letters: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(letters, key=letter_key))


def _neg(block: tuple[int, ...]) -> tuple[int, ...]:
    # no block other than the zero block holds both i and -i, so the
    # (abs, sign) order survives negation
    return tuple(-x for x in block)


@dataclass(frozen=True)
class FaceA:
    """Ordered partition ``(B_1, ..., B_k)`` of ``{1..n}``."""

    blocks: tuple[tuple[int, ...], ...]
    n: int

    family = "A"

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "FaceA":
        bl = tuple(_sorted_block(b) for b in blocks)
        letters = [x for b in bl for x in b]
        if n is None:
            n = len(letters)
        if any(not b for b in bl):
            raise ValueError("blocks must be nonempty")
        if sorted(letters) != list(range(1, n + 1)):
            raise ValueError(f"blocks do not partition 1..{n}: {bl}")
        return cls(bl, n)


@dataclass(frozen=True)
class FaceB:
    """Anti-symmetric ordered partition of ``{±1..±n}`` with a zero block."""

    blocks: tuple[tuple[int, ...], ...]
    zero: tuple[int, ...]
    n: int

    family = "B"

    @classmethod
    def from_blocks(
        cls, blocks: Iterable[Iterable[int]], zero: Iterable[int] = (), n: int | None = None
    ) -> "FaceB":
        bl, z, n = _check_signed(blocks, zero, n)
        return cls(bl, z, n)


@dataclass(frozen=True)
class FaceD:
    """Type D partition with a central block.

    Canonical form never ends in a singleton signed block next to an empty
    central block; such a face is stored with the central block ``{i, -i}``.
    """

    blocks: tuple[tuple[int, ...], ...]
    central: tuple[int, ...]
    n: int

    family = "D"

    @classmethod
    def from_blocks(
        cls, blocks: Iterable[Iterable[int]], central: Iterable[int] = (), n: int | None = None
    ) -> "FaceD":
        bl, c, n = _check_signed(blocks, central, n)
        return _merge(cls(bl, c, n))


Face = Union[FaceA, FaceB, FaceD]
FaceType = frozenset


def _check_signed(blocks, zero, n):
    bl = tuple(_sorted_block(b) for b in blocks)
    zset = set(zero) | {-x for x in zero}
    z = _sorted_block(zset)
    if any(not b for b in bl):
        raise ValueError("signed blocks must be nonempty")
    absvals = [abs(x) for b in bl for x in b] + [x for x in z if x > 0]
    if n is None:
        n = len(absvals)
    if sorted(absvals) != list(range(1, n + 1)):
        raise ValueError(f"not an anti-symmetric partition of ±1..±{n}")
    return bl, z, n


def _merge(f: FaceD) -> FaceD:
    if not f.central and f.blocks and len(f.blocks[-1]) == 1:
        (x,) = f.blocks[-1]
        return FaceD(f.blocks[:-1], _sorted_block((x, -x)), f.n)
    return f


def canonicalize(f: Face) -> Face:
    """Return the canonical representative of ``f`` (idempotent)."""
    if isinstance(f, FaceA):
        return FaceA(tuple(_sorted_block(b) for b in f.blocks), f.n)
    if isinstance(f, FaceB):
        return FaceB(tuple(_sorted_block(b) for b in f.blocks), _sorted_block(f.zero), f.n)
    return _merge(FaceD(tuple(_sorted_block(b) for b in f.blocks), _sorted_block(f.central), f.n))


def middle(f: Face) -> tuple[int, ...]:
    """Zero block of a type B face, central block of a type D face."""
    return f.zero if isinstance(f, FaceB) else f.central


def full_blocks(f: Face) -> tuple[tuple[int, ...], ...]:
    """All blocks of the partition, left to right, without empty ones."""
    if isinstance(f, FaceA):
        return f.blocks
    mid = middle(f)
    return f.blocks + ((mid,) if mid else ()) + tuple(_neg(b) for b in reversed(f.blocks))


# ----------------------------------------------------------------- products


def _check(x: Face, y: Face) -> None:
    if type(x) is not type(y):
        raise DimensionError(f"cannot multiply {type(x).__name__} by {type(y).__name__}")
    if x.n != y.n:
        raise DimensionError(f"rank mismatch: n={x.n} vs n={y.n}")


def _refine(x_blocks, ylev: dict[int, int]) -> list[tuple[int, ...]]:
    out = []
    for b in x_blocks:
        if len(b) == 1:
            out.append(b)
            continue
        groups: dict[int, list[int]] = {}
        for l in b:
            groups.setdefault(ylev[l], []).append(l)
        for key in sorted(groups):
            out.append(tuple(groups[key]))
    return out


def product_A(x: FaceA, y: FaceA) -> FaceA:
    """Refine ``x`` by ``y``: blocks ``B_i ∩ C_j`` in lexicographic order."""
    _check(x, y)
    return FaceA(tuple(_refine(x.blocks, levels(y))), x.n)


def _signed_product(x, y):
    ylev = levels(y)
    out = _refine(x.blocks, ylev)
    xmid = middle(x)
    if not xmid:
        return tuple(out), ()
    groups: dict[int, list[int]] = {}
    for l in xmid:
        groups.setdefault(ylev[l], []).append(l)
    for key in sorted(k for k in groups if k < 0):
        out.append(tuple(groups[key]))
    return tuple(out), tuple(groups.get(0, ()))


def product_B(x: FaceB, y: FaceB) -> FaceB:
    _check(x, y)
    blocks, zero = _signed_product(x, y)
    return FaceB(blocks, zero, x.n)


def product_D(x: FaceD, y: FaceD) -> FaceD:
    _check(x, y)
    blocks, central = _signed_product(x, y)
    return _merge(FaceD(blocks, central, x.n))


def product(x: Face, y: Face) -> Face:
    if isinstance(x, FaceA):
        return product_A(x, y)
    if isinstance(x, FaceB):
        return product_B(x, y)
    return product_D(x, y)


def is_face_of(x: Face, y: Face) -> bool:
    """``x ≤ y`` in the face poset, i.e. ``xy == y``."""
    return product(x, y) == y


def identity(family: str, n: int) -> Face:
    if family == "A":
        return FaceA((tuple(range(1, n + 1)),), n)
    everything = _sorted_block(list(range(1, n + 1)) + list(range(-n, 0)))
    if family == "B":
        return FaceB((), everything, n)
    if family == "D":
        return FaceD((), everything, n)
    raise ValueError(f"unknown family {family!r}")


def is_chamber(f: Face) -> bool:
    if isinstance(f, FaceA):
        return len(f.blocks) == f.n
    if isinstance(f, FaceB):
        return not f.zero and len(f.blocks) == f.n
    return len(f.central) == 2 and len(f.blocks) == f.n - 1


# -------------------------------------------------------------------- types


def labels(family: str, n: int) -> tuple[str, ...]:
    """Vertex labels of the Coxeter diagram, in diagram order."""
    if family == "A":
        return tuple(f"s{i}" for i in range(1, n))
    if family == "B":
        return tuple(f"s{i}" for i in range(1, n)) + ("t",)
    if family == "D":
        return tuple(f"s{i}" for i in range(1, n - 1)) + ("u", "v")
    raise ValueError(f"unknown family {family!r}")


def make_type(family: str, n: int, names: Iterable[str]) -> FaceType:
    J = frozenset(names)
    bad = J - set(labels(family, n))
    if bad:
        raise ValueError(f"invalid labels for {family}{n}: {sorted(bad)}")
    return J


def sort_type(family: str, n: int, J: Iterable[str]) -> tuple[str, ...]:
    order = {s: i for i, s in enumerate(labels(family, n))}
    return tuple(sorted(J, key=order.__getitem__))


def _sign_parity_label(letters: Iterable[int]) -> str:
    # convention: the vertex whose letters are all positive has type u
    neg = sum(1 for x in letters if x < 0)
    return "u" if neg % 2 == 0 else "v"


def face_type(f: Face) -> FaceType:
    """Set of labels of the vertices of ``f``."""
    sums = list(itertools.accumulate(len(b) for b in f.blocks))
    n = f.n
    if isinstance(f, FaceA):
        return frozenset(f"s{c}" for c in sums[:-1])
    if isinstance(f, FaceB):
        return frozenset("t" if c == n else f"s{c}" for c in sums)
    out = {f"s{c}" for c in sums if c <= n - 2}
    if len(f.central) == 2:
        out |= {"u", "v"}
    elif not f.central and f.blocks:
        out.add(_sign_parity_label(x for b in f.blocks for x in b))
    return frozenset(out)


def rank(f: Face) -> int:
    """Number of vertices of ``f``."""
    return len(face_type(f))


# -------------------------------------------------------------- enumeration


def ordered_set_partitions(items: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not items:
        yield ()
        return
    m = len(items)
    for size in range(1, m + 1):
        for first in itertools.combinations(items, size):
            rest = tuple(x for x in items if x not in first)
            for tail in ordered_set_partitions(rest):
                yield (first,) + tail


def _signed_faces(n: int) -> Iterator[tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]]:
    letters = tuple(range(1, n + 1))
    for zsize in range(n + 1):
        for zpos in itertools.combinations(letters, zsize):
            zero = _sorted_block(zpos + tuple(-x for x in zpos))
            rest = tuple(x for x in letters if x not in zpos)
            for osp in ordered_set_partitions(rest):
                for signs in itertools.product((1, -1), repeat=len(rest)):
                    sign = dict(zip(rest, signs))
                    yield tuple(_sorted_block(sign[x] * x for x in b) for b in osp), zero


@functools.lru_cache(maxsize=None)
def _all_faces(family: str, n: int) -> tuple[Face, ...]:
    if family == "A":
        out = [FaceA(b, n) for b in ordered_set_partitions(tuple(range(1, n + 1)))]
    elif family == "B":
        out = [FaceB(b, z, n) for b, z in _signed_faces(n)]
    elif family == "D":
        out = [
            FaceD(b, z, n)
            for b, z in _signed_faces(n)
            if z or not b or len(b[-1]) > 1
        ]
    else:
        raise ValueError(f"unknown family {family!r}")
    out.sort(key=format_face)
    return tuple(out)


def enumerate_faces(family: str, n: int, type_filter: Iterable[str] | None = None) -> list[Face]:
    """All canonical faces of the complex, sorted by their text form.

    With ``type_filter`` only the faces of exactly that type are returned.
    """
    if n < 2 and family != "A":
        raise ValueError("n must be at least 2")
    faces = _all_faces(family, n)
    if type_filter is None:
        return list(faces)
    J = make_type(family, n, type_filter)
    return [f for f in faces if face_type(f) == J]


@functools.lru_cache(maxsize=None)
def chambers(family: str, n: int) -> tuple[Face, ...]:
    """Chambers in canonical (text-lexicographic) order."""
    return tuple(f for f in _all_faces(family, n) if is_chamber(f))


# ------------------------------------------------------------- text format


def _fmt_block(b: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in b) + "}"


def format_face(f: Face) -> str:
    """Canonical text, e.g. ``({2}|{1,3,4})``, ``({2}|{-3}|Z:{1})``,
    ``({2,-3}|C:{1,-1})``.  The B zero block is written by its positive half."""
    parts = [_fmt_block(b) for b in f.blocks]
    if isinstance(f, FaceB):
        parts.append("Z:" + _fmt_block(x for x in f.zero if x > 0))
    elif isinstance(f, FaceD):
        parts.append("C:" + _fmt_block(f.central))
    return "(" + "|".join(parts) + ")"


_BLOCK_RE = re.compile(r"^(Z:|C:)?\{([-0-9,\s]*)\}$")


def parse_face(text: str) -> Face:
    """Inverse of :func:`format_face`."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"malformed face: {text!r}")
    blocks, mid, tag = [], None, None
    for piece in s[1:-1].split("|"):
        m = _BLOCK_RE.match(piece.strip())
        if not m:
            raise ValueError(f"malformed block {piece!r} in {text!r}")
        body = m.group(2).strip()
        letters = [int(t) for t in body.split(",")] if body else []
        if m.group(1):
            if mid is not None:
                raise ValueError(f"two middle blocks in {text!r}")
            tag, mid = m.group(1), letters
        else:
            if mid is not None:
                raise ValueError(f"signed block after the middle block in {text!r}")
            blocks.append(letters)
    if tag is None:
        return FaceA.from_blocks(blocks)
    if tag == "Z:":
        return FaceB.from_blocks(blocks, mid)
    return FaceD.from_blocks(blocks, mid)


# ------------------------------------------------------------ sign vectors


@functools.lru_cache(maxsize=None)
def hyperplanes(family: str, n: int) -> tuple[tuple[str, int, int], ...]:
    """Reflection arrangement in fixed order: all ``x_i = x_j`` (i<j), then
    all ``x_i = -x_j``, then all ``x_i = 0``.  D drops the last group, A keeps
    only the first."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    hs = [("-", i, j) for i, j in pairs]
    if family in ("B", "D"):
        hs += [("+", i, j) for i, j in pairs]
    if family == "B":
        hs += [("0", i, 0) for i in range(1, n + 1)]
    return tuple(hs)


_LEVELS: dict = {}


def levels(f: Face) -> dict[int, int]:
    """Position of every letter in the full partition; signed faces put the
    zero/central block at level 0."""
    lev = _LEVELS.get(f)
    if lev is not None:
        return lev
    lev = {}
    if isinstance(f, FaceA):
        for k, b in enumerate(f.blocks):
            for x in b:
                lev[x] = k
    else:
        k = len(f.blocks)
        for m, b in enumerate(f.blocks):
            for x in b:
                lev[x] = m - k
                lev[-x] = k - m
        for x in middle(f):
            lev[x] = 0
    if len(_LEVELS) > 500_000:
        _LEVELS.clear()
    _LEVELS[f] = lev
    return lev


def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True, slots=True)
class SignVector:
    """Signs (+1, -1, 0) of a face on each hyperplane of the arrangement."""

    family: str
    n: int
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(hyperplanes(self.family, self.n)):
            raise ValueError("wrong number of signs for the arrangement")
        if any(s not in (-1, 0, 1) for s in self.signs):
            raise ValueError("signs must be -1, 0 or 1")

    @classmethod
    def of(cls, f: Face) -> "SignVector":
        lev = levels(f)
        signs = []
        for kind, i, j in hyperplanes(f.family, f.n):
            if kind == "-":
                signs.append(_sgn(lev[i] - lev[j]))
            elif kind == "+":
                signs.append(_sgn(lev[i] - lev[-j]))
            else:
                signs.append(_sgn(lev[i]))
        return cls(f.family, f.n, tuple(signs))

    def is_realizable(self) -> bool:
        return self in _sign_table(self.family, self.n)

    def to_face(self) -> Face:
        try:
            return _sign_table(self.family, self.n)[self]
        except KeyError:
            raise ValueError(f"sign vector {self.signs} is not a face") from None

    def restrict(self, family: str) -> "SignVector":
        """Forget the hyperplanes not present in the smaller arrangement."""
        keep = len(hyperplanes(family, self.n))
        return SignVector(family, self.n, self.signs[:keep])


@functools.lru_cache(maxsize=None)
def _sign_table(family: str, n: int) -> dict[SignVector, Face]:
    return {SignVector.of(f): f for f in _all_faces(family, n)}


def sign_vector_product(x: SignVector, y: SignVector) -> SignVector:
    """Keep the nonzero signs of ``x``, fill its zeros from ``y``."""
    if (x.family, x.n) != (y.family, y.n):
        raise DimensionError("sign vectors of different arrangements")
    return SignVector(x.family, x.n, tuple(a if a else b for a, b in zip(x.signs, y.signs)))

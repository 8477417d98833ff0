"""Forgetful semigroup maps from the B complex to the D and A complexes."""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from coxshuffle.algebra import AlgebraElement, complex_data
from coxshuffle.faces import (
    Face,
    FaceA,
    FaceB,
    FaceD,
    SignVector,
    canonicalize,
    enumerate_faces,
    full_blocks,
    product,
)


def map_B_to_D(f: FaceB) -> FaceD:
    """Same half-partition, zero block read as the central block.

    A face whose zero block is empty and whose last block is a singleton
    lands on a face with a two-letter central block, which is how the
    complex loses the hyperplanes ``x_i = 0``.
    """
    if not isinstance(f, FaceB):
        raise TypeError("expected a type B face")
    return canonicalize(FaceD(f.blocks, f.zero, f.n))


def _forget_bars(f: Face) -> FaceA:
    blocks = [tuple(x for x in b if x > 0) for b in full_blocks(f)]
    return FaceA(tuple(b for b in blocks if b), f.n)


def map_B_to_A(f: FaceB) -> FaceA:
    """Delete the barred letters and the blocks left empty."""
    if not isinstance(f, FaceB):
        raise TypeError("expected a type B face")
    return _forget_bars(f)


def map_D_to_A(f: FaceD) -> FaceA:
    if not isinstance(f, FaceD):
        raise TypeError("expected a type D face")
    return _forget_bars(f)


@dataclass(frozen=True)
class ComplexMap:
    name: str
    source: str
    target: str
    face_map: Callable[[Face], Face]

    def __call__(self, f: Face) -> Face:
        return self.face_map(f)

    def then(self, other: "ComplexMap") -> "ComplexMap":
        if self.target != other.source:
            raise ValueError(f"cannot compose {self.name} with {other.name}")
        first, second = self.face_map, other.face_map
        return ComplexMap(f"{self.source}->{other.target}", self.source, other.target, lambda f: second(first(f)))


B_TO_D = ComplexMap("B->D", "B", "D", map_B_to_D)
D_TO_A = ComplexMap("D->A", "D", "A", map_D_to_A)
B_TO_A = ComplexMap("B->A", "B", "A", map_B_to_A)
MAPS = {m.name: m for m in (B_TO_D, D_TO_A, B_TO_A)}


def get_map(name: str) -> ComplexMap:
    try:
        return MAPS[name]
    except KeyError:
        raise ValueError(f"unknown map {name!r}; expected one of {sorted(MAPS)}") from None


def sign_vector_map(m: ComplexMap, f: Face) -> Face:
    """The same map computed by dropping hyperplanes from the sign vector."""
    return SignVector.of(f).restrict(m.target).to_face()


@functools.lru_cache(maxsize=None)
def _orbit_images(name: str, n: int) -> dict:
    """Image of every ``sigma_J`` of the source complex, in orbit form."""
    m = get_map(name)
    data = complex_data(m.source, n)
    out = {}
    for J, faces in data.orbits.items():
        counts: dict[Face, int] = defaultdict(int)
        for f in faces:
            counts[m(f)] += 1
        img = AlgebraElement(m.target, n, counts)
        o = img.orbit_coefficients()
        if o is None:  # cannot happen for Weyl-equivariant maps
            raise AssertionError(f"image of an orbit under {name} is not invariant")
        out[J] = o
    return out


def push_element(m: ComplexMap, x: AlgebraElement) -> AlgebraElement:
    """Linear extension of the face map."""
    if x.family != m.source:
        raise ValueError(f"{m.name} expects an element over {m.source}")
    o = x._cheap_orbit()
    if o is not None and MAPS.get(m.name) is m:
        images = _orbit_images(m.name, x.n)
        acc: dict = defaultdict(Fraction)
        for J, c in o.items():
            for K, d in images[J].items():
                acc[K] += c * d
        return AlgebraElement.from_orbits(m.target, x.n, acc)
    out: dict[Face, Fraction] = defaultdict(Fraction)
    for f, c in x.terms.items():
        out[m(f)] += c
    return AlgebraElement(m.target, x.n, out)


def verify_homomorphism(m: ComplexMap, n: int, samples: int | None = None, seed: int = 0) -> bool:
    """``m(xy) == m(x) m(y)`` over all face pairs, or over ``samples``
    random pairs drawn with the given seed."""
    faces = enumerate_faces(m.source, n)
    if samples is None:
        images = [m(f) for f in faces]
        for f, mf in zip(faces, images):
            for g, mg in zip(faces, images):
                if m(product(f, g)) != product(mf, mg):
                    return False
        return True
    rng = np.random.Generator(np.random.Philox(seed))
    idx = rng.integers(0, len(faces), size=(samples, 2))
    for i, j in idx:
        f, g = faces[i], faces[j]
        if m(product(f, g)) != product(m(f), m(g)):
            return False
    return True

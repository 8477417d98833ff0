"""Face semigroups of the Coxeter complexes of types A, B and D, their shuffle
algebras and random walks, and q-analogues on finite-field buildings."""

from coxshuffle.faces import (
    FaceA,
    FaceB,
    FaceD,
    FaceType,
    SignVector,
    enumerate_faces,
    face_type,
    format_face,
    is_face_of,
    parse_face,
    product,
)
from coxshuffle.algebra import AlgebraElement, ShuffleFamily, get_family

__all__ = [
    "AlgebraElement",
    "FaceA",
    "FaceB",
    "FaceD",
    "FaceType",
    "ShuffleFamily",
    "SignVector",
    "enumerate_faces",
    "face_type",
    "format_face",
    "get_family",
    "is_face_of",
    "parse_face",
    "product",
]

__version__ = "0.1.0"

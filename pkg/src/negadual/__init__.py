"""Verified constructions of (near-)MDS Euclidean self-dual, Hermitian
self-dual and isodual codes over odd-characteristic finite fields."""

from .gf import FieldElement, field_make, field_of_order
from .kernels import BACKEND

__all__ = ["BACKEND", "FieldElement", "field_make", "field_of_order"]
__version__ = "0.1.0"

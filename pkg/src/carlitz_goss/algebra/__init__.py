"""Exact arithmetic substrate: finite fields, theta-polynomials, Laurent and
P-adic series, and z-truncated Tate polynomials."""

from .fields import FFElem, FieldDescriptor, ff_frobenius, field_for_q, field_make
from .laurent import LaurentSeries
from .padic import PAdicElem, embed_poly
from .poly import (
    ThetaPoly,
    enumerate_monics,
    is_irreducible,
    monic_from_index,
    poly_factorize,
)
from .tate import TatePoly

__all__ = [
    "FFElem",
    "FieldDescriptor",
    "LaurentSeries",
    "PAdicElem",
    "TatePoly",
    "ThetaPoly",
    "embed_poly",
    "enumerate_monics",
    "ff_frobenius",
    "field_for_q",
    "field_make",
    "is_irreducible",
    "monic_from_index",
    "poly_factorize",
]

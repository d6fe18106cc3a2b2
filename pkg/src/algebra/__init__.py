"""Simplicial infinitesimal objects and exact arithmetic in their Weil algebras."""

from src.algebra.simplicial import (
    UNIT,
    IndexOutOfRangeError,
    Monomial,
    ObjectDefinitionError,
    SimplicialObject,
    basis,
    block_offsets,
    dim,
    is_forbidden,
    make_D_paren,
    make_Dn,
    monomial,
    oplus,
    oplus_all,
)
from src.algebra.weil import MixedAlgebraError, WeilElement, add, as_fraction, mul, scale

__all__ = [
    "UNIT",
    "IndexOutOfRangeError",
    "MixedAlgebraError",
    "Monomial",
    "ObjectDefinitionError",
    "SimplicialObject",
    "WeilElement",
    "add",
    "as_fraction",
    "basis",
    "block_offsets",
    "dim",
    "is_forbidden",
    "make_D_paren",
    "make_Dn",
    "monomial",
    "mul",
    "oplus",
    "oplus_all",
    "scale",
]

"""Infinitesimal maps, their validity, and the induced Weil-algebra homomorphisms."""

from src.morphisms.homs import (
    AlgebraHom,
    describe_residual,
    hom_apply,
    hom_compose,
    hom_equal,
    hom_residual,
    induced_hom,
)
from src.morphisms.maps import (
    ArityMismatchError,
    InfinitesimalMap,
    InvalidMapError,
    NonzeroConstantTermError,
    ObjectMismatchError,
    TargetMismatchError,
    ValidationReport,
    Violation,
    block_inclusion,
    compose_maps,
    oplus_maps,
    require_valid,
    validate_map,
)

__all__ = [
    "AlgebraHom",
    "ArityMismatchError",
    "InfinitesimalMap",
    "InvalidMapError",
    "NonzeroConstantTermError",
    "ObjectMismatchError",
    "TargetMismatchError",
    "ValidationReport",
    "Violation",
    "block_inclusion",
    "compose_maps",
    "describe_residual",
    "hom_apply",
    "hom_compose",
    "hom_equal",
    "hom_residual",
    "induced_hom",
    "oplus_maps",
    "require_valid",
    "validate_map",
]

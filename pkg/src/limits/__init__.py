"""Limits of finite diagrams of Weil algebras, decided by exact linear algebra."""

from src.limits.diagram import (
    Arrow,
    Cone,
    Diagram,
    LimitReport,
    LimitSpace,
    MalformedDiagramError,
    NoMediatorError,
    NonUniqueMediatorError,
    ShapeMismatchError,
    chain_diagram,
    complete_cone,
    complete_tuple,
    compute_limit,
    cone_over,
    is_limit_cone,
    lift,
    mediator,
    pullback_diagram,
)

__all__ = [
    "Arrow",
    "Cone",
    "Diagram",
    "LimitReport",
    "LimitSpace",
    "MalformedDiagramError",
    "NoMediatorError",
    "NonUniqueMediatorError",
    "ShapeMismatchError",
    "chain_diagram",
    "complete_cone",
    "complete_tuple",
    "compute_limit",
    "cone_over",
    "is_limit_cone",
    "lift",
    "mediator",
    "pullback_diagram",
]

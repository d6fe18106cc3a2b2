"""
Finite diagrams of Weil algebras and exact limit certification.

The limit of a diagram is computed as the space of compatible tuples in the
product of the node algebras: for every arrow a: W_i -> W_j the component
at j equals a applied to the component at i. A cone is a limit exactly when
its legs commute with every arrow and the induced map from the apex into
that space is a bijection.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import structlog

from src.algebra import matrix as mx
from src.algebra.simplicial import SimplicialObject
from src.algebra.weil import WeilElement
from src.errors import KernelError
from src.morphisms.homs import AlgebraHom, hom_apply, hom_compose

logger = structlog.get_logger(__name__)


class MalformedDiagramError(KernelError):
    error_type = "malformed-diagram"


class ShapeMismatchError(KernelError):
    error_type = "shape-mismatch"


class NoMediatorError(KernelError):
    """The other cone does not commute, so nothing mediates."""

    error_type = "no-mediator"


class NonUniqueMediatorError(KernelError):
    """The reference cone is not a limit, so a mediator is not unique."""

    error_type = "non-unique"


@dataclass(frozen=True)
class Arrow:
    """An arrow W_{nodes[source]} -> W_{nodes[target]} of a diagram."""

    source: int
    target: int
    hom: AlgebraHom
    label: Optional[str] = None


@dataclass(frozen=True)
class Diagram:
    nodes: Tuple[SimplicialObject, ...]
    arrows: Tuple[Arrow, ...] = ()
    node_labels: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if not self.nodes:
            raise MalformedDiagramError("A diagram needs at least one node")
        for k, arrow in enumerate(self.arrows):
            for end in (arrow.source, arrow.target):
                if not 0 <= end < len(self.nodes):
                    raise MalformedDiagramError(
                        f"Arrow {k} references node {end}; diagram has {len(self.nodes)} nodes",
                        details={"arrow": k, "node": end},
                    )
            if arrow.hom.domain != self.nodes[arrow.source] or (
                arrow.hom.codomain != self.nodes[arrow.target]
            ):
                raise MalformedDiagramError(
                    f"Arrow {k} ({arrow.label or arrow.hom.label}) does not run "
                    f"W_{self.nodes[arrow.source]} -> W_{self.nodes[arrow.target]}",
                    details={"arrow": k},
                )

    @property
    def offsets(self) -> Tuple[int, ...]:
        running, result = 0, []
        for node in self.nodes:
            result.append(running)
            running += node.dim
        return tuple(result)

    @property
    def product_dim(self) -> int:
        return sum(node.dim for node in self.nodes)

    def split(self, vector: Sequence[Fraction]) -> List[WeilElement]:
        """Cut a product vector into one element per node."""
        return [
            WeilElement.from_vector(node, vector[start : start + node.dim])
            for node, start in zip(self.nodes, self.offsets)
        ]

    def join(self, elements: Sequence[WeilElement]) -> Tuple[Fraction, ...]:
        vector: List[Fraction] = []
        for node, element in zip(self.nodes, elements):
            if element.parent != node:
                raise ShapeMismatchError(
                    f"Component in W_{element.parent} given for node W_{node}",
                )
            vector.extend(element.to_vector())
        return tuple(vector)

    def reordered(self, node_order: Sequence[int], arrow_order: Optional[Sequence[int]] = None) -> "Diagram":
        """Same diagram with nodes listed as ``node_order`` (old indices)."""
        position = {old: new for new, old in enumerate(node_order)}
        order = arrow_order if arrow_order is not None else range(len(self.arrows))
        arrows = tuple(
            Arrow(position[a.source], position[a.target], a.hom, a.label)
            for a in (self.arrows[k] for k in order)
        )
        labels = tuple(self.node_labels[i] for i in node_order) if self.node_labels else ()
        return Diagram(tuple(self.nodes[i] for i in node_order), arrows, labels)


@dataclass(frozen=True)
class Cone:
    """Legs W_apex -> W_node, one per node; ``None`` marks a leg to be completed."""

    apex: SimplicialObject
    legs: Tuple[Optional[AlgebraHom], ...]

    def reordered(self, node_order: Sequence[int]) -> "Cone":
        return Cone(self.apex, tuple(self.legs[i] for i in node_order))


def chain_diagram(
    inner: Sequence[SimplicialObject], arrows: Sequence[AlgebraHom], cyclic: bool = False
) -> Diagram:
    """
    Inner nodes joined through outer nodes.

    Outer node k receives ``arrows[2k]`` from inner node k and
    ``arrows[2k+1]`` from inner node k+1 (wrapping around when ``cyclic``).
    A pullback square is the non-cyclic case with two inner nodes.
    """
    n = len(inner)
    outer_count = n if cyclic else n - 1
    if outer_count < 1 or len(arrows) != 2 * outer_count:
        raise MalformedDiagramError(
            f"{n} inner nodes need {2 * max(outer_count, 1)} arrows, got {len(arrows)}",
            details={"inner": n, "arrows": len(arrows)},
        )
    nodes = list(inner)
    labels = [f"inner_{k + 1}" for k in range(n)]
    edges: List[Arrow] = []
    for k in range(outer_count):
        left, right = arrows[2 * k], arrows[2 * k + 1]
        if left.codomain != right.codomain:
            raise MalformedDiagramError(
                f"Arrows {left.label} and {right.label} land in different algebras "
                f"W_{left.codomain} and W_{right.codomain}",
                details={"outer": k + 1},
            )
        outer_index = len(nodes)
        nodes.append(left.codomain)
        labels.append(f"outer_{k + 1}")
        edges.append(Arrow(k, outer_index, left, left.name))
        edges.append(Arrow((k + 1) % n, outer_index, right, right.name))
    return Diagram(tuple(nodes), tuple(edges), tuple(labels))


def pullback_diagram(left: AlgebraHom, right: AlgebraHom) -> Diagram:
    """The cospan W_X -> W_Z <- W_Y."""
    return chain_diagram([left.domain, right.domain], [left, right])


def cone_over(diagram: Diagram, apex: SimplicialObject, legs: Sequence[AlgebraHom]) -> Cone:
    """Cone with the given legs on the first nodes; the rest get completed."""
    padded = list(legs) + [None] * (len(diagram.nodes) - len(legs))
    return Cone(apex, tuple(padded))


# ----------------------------------------------------------------------
# Limit computation
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class LimitSpace:
    """Compatible tuples, with a reduced echelon basis in product coordinates."""

    diagram: Diagram
    basis: Tuple[mx.Vector, ...]
    pivots: Tuple[int, ...]
    contains_unit: bool
    closed_under_product: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def is_subalgebra(self) -> bool:
        return self.contains_unit and self.closed_under_product

    def coordinates(self, vector: Sequence[Fraction]) -> Optional[mx.Vector]:
        return mx.coordinates_in(self.basis, self.pivots, vector)

    def contains(self, vector: Sequence[Fraction]) -> bool:
        return self.coordinates(vector) is not None

    def elements(self) -> List[List[WeilElement]]:
        return [self.diagram.split(v) for v in self.basis]


def _compatibility_rows(d: Diagram) -> List[List[Fraction]]:
    offsets = d.offsets
    width = d.product_dim
    rows: List[List[Fraction]] = []
    for arrow in d.arrows:
        source_start, target_start = offsets[arrow.source], offsets[arrow.target]
        for k, matrix_row in enumerate(arrow.hom.matrix):
            row = [Fraction(0)] * width
            for c, value in enumerate(matrix_row):
                if value:
                    row[source_start + c] += value
            row[target_start + k] -= 1
            rows.append(row)
    return rows


def _pointwise_product(d: Diagram, u: Sequence[Fraction], v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return d.join([a.mul(b) for a, b in zip(d.split(u), d.split(v))])


def compute_limit(d: Diagram) -> LimitSpace:
    """Solve the compatibility system and certify the subalgebra property."""
    width = d.product_dim
    kernel = mx.nullspace(_compatibility_rows(d), width)
    basis, pivots = mx.row_space(kernel, width)

    unit = d.join([WeilElement.one(node) for node in d.nodes])
    contains_unit = mx.coordinates_in(basis, pivots, unit) is not None
    closed = all(
        mx.coordinates_in(basis, pivots, _pointwise_product(d, basis[i], basis[j])) is not None
        for i in range(len(basis))
        for j in range(i, len(basis))
    )
    space = LimitSpace(d, tuple(basis), tuple(pivots), contains_unit, closed)
    logger.debug(
        "Limit computed",
        nodes=len(d.nodes),
        arrows=len(d.arrows),
        product_dim=width,
        dimension=space.dimension,
        subalgebra=space.is_subalgebra,
    )
    return space


def complete_cone(d: Diagram, c: Cone) -> Tuple[Cone, Tuple[int, ...]]:
    """
    Fill missing legs by composing a known leg with an arrow out of its node.

    Returns the completed cone and the indices of the legs that were filled.
    """
    if len(c.legs) != len(d.nodes):
        raise ShapeMismatchError(
            f"Cone has {len(c.legs)} legs for {len(d.nodes)} nodes",
            details={"legs": len(c.legs), "nodes": len(d.nodes)},
        )
    legs: List[Optional[AlgebraHom]] = list(c.legs)
    for i, leg in enumerate(legs):
        if leg is not None and (leg.domain != c.apex or leg.codomain != d.nodes[i]):
            raise ShapeMismatchError(
                f"Leg {i} ({leg.label}) is not a hom W_{c.apex} -> W_{d.nodes[i]}",
                details={"leg": i},
            )
    completed: List[int] = []
    progress = True
    while progress and any(leg is None for leg in legs):
        progress = False
        for arrow in d.arrows:
            known = legs[arrow.source]
            if known is not None and legs[arrow.target] is None:
                legs[arrow.target] = hom_compose(arrow.hom, known)
                completed.append(arrow.target)
                progress = True
    missing = [i for i, leg in enumerate(legs) if leg is None]
    if missing:
        raise ShapeMismatchError(
            f"Legs for nodes {missing} cannot be completed from the given legs",
            details={"missing": missing},
        )
    return Cone(c.apex, tuple(legs)), tuple(sorted(completed))  # type: ignore[arg-type]


@dataclass(frozen=True)
class LimitReport:
    commutes: bool
    limit_dimension: int
    apex_dimension: int
    is_limit: bool
    limit: LimitSpace
    cone: Cone
    induced: Optional[mx.Matrix] = None
    completed_legs: Tuple[int, ...] = ()
    failing_arrows: Tuple[int, ...] = ()

    def describe(self) -> str:
        if self.is_limit:
            return f"limit: dim {self.limit_dimension} = apex dim {self.apex_dimension}"
        if not self.commutes:
            return f"cone does not commute on arrows {list(self.failing_arrows)}"
        return (
            f"not a limit: limit dim {self.limit_dimension}, apex dim {self.apex_dimension}"
        )


def _cone_vectors(d: Diagram, cone: Cone) -> List[Tuple[Fraction, ...]]:
    """Product vector of every apex basis monomial under the legs."""
    columns = []
    for j in range(cone.apex.dim):
        vector: List[Fraction] = []
        for leg in cone.legs:
            vector.extend(mx.column(leg.matrix, j))  # type: ignore[union-attr]
        columns.append(tuple(vector))
    return columns


def _failing_arrows(d: Diagram, cone: Cone) -> Tuple[int, ...]:
    failing = []
    for k, arrow in enumerate(d.arrows):
        through = hom_compose(arrow.hom, cone.legs[arrow.source])  # type: ignore[arg-type]
        if through != cone.legs[arrow.target]:
            failing.append(k)
    return tuple(failing)


def is_limit_cone(d: Diagram, c: Cone, limit: Optional[LimitSpace] = None) -> LimitReport:
    """Certify (or refute) that ``c`` is a limit cone over ``d``."""
    cone, completed = complete_cone(d, c)
    space = limit if limit is not None else compute_limit(d)
    failing = _failing_arrows(d, cone)
    commutes = not failing

    induced: Optional[mx.Matrix] = None
    bijective = False
    if commutes:
        coordinate_columns = []
        for vector in _cone_vectors(d, cone):
            coords = space.coordinates(vector)
            if coords is None:
                # commuting legs always land in the limit
                raise MalformedDiagramError("Commuting cone left the compatible subspace")
            coordinate_columns.append(coords)
        induced = mx.from_columns(coordinate_columns, space.dimension)
        bijective = space.dimension == cone.apex.dim and (
            mx.rank(induced, cone.apex.dim) == cone.apex.dim
        )

    report = LimitReport(
        commutes=commutes,
        limit_dimension=space.dimension,
        apex_dimension=cone.apex.dim,
        is_limit=commutes and bijective,
        limit=space,
        cone=cone,
        induced=induced,
        completed_legs=completed,
        failing_arrows=failing,
    )
    logger.debug(
        "Cone checked",
        apex=str(cone.apex),
        commutes=commutes,
        limit_dimension=space.dimension,
        apex_dimension=cone.apex.dim,
        is_limit=report.is_limit,
    )
    return report


def _solve_apex(report: LimitReport, coords: Sequence[Fraction]) -> mx.Vector:
    assert report.induced is not None
    solution, nullity = mx.solve(report.induced, coords, report.apex_dimension)
    if solution is None or nullity:
        raise NonUniqueMediatorError("Induced map is not invertible")
    return solution


def _require_limit(d: Diagram, limit_cone: Cone) -> LimitReport:
    report = is_limit_cone(d, limit_cone)
    if not report.is_limit:
        raise NonUniqueMediatorError(
            f"Reference cone is not a limit ({report.describe()})",
            details={"limit_dimension": report.limit_dimension, "apex_dimension": report.apex_dimension},
        )
    return report


def mediator(
    d: Diagram,
    limit_cone: Cone,
    other_cone: Cone,
    report: Optional[LimitReport] = None,
) -> AlgebraHom:
    """The unique h: W_other -> W_apex with leg_i ∘ h = other_leg_i."""
    report = report or _require_limit(d, limit_cone)
    other, _ = complete_cone(d, other_cone)
    failing = _failing_arrows(d, other)
    if failing:
        raise NoMediatorError(
            f"Other cone does not commute on arrows {list(failing)}",
            details={"arrows": list(failing)},
        )
    columns = []
    for vector in _cone_vectors(d, other):
        coords = report.limit.coordinates(vector)
        if coords is None:
            raise NoMediatorError("Other cone leaves the compatible subspace")
        columns.append(_solve_apex(report, coords))
    return AlgebraHom(
        other.apex,
        report.cone.apex,
        mx.from_columns(columns, report.apex_dimension),
        "mediator",
    )


def complete_tuple(d: Diagram, components: Mapping[int, WeilElement]) -> List[WeilElement]:
    """Fill unspecified nodes by pushing known components along arrows."""
    values: Dict[int, WeilElement] = dict(components)
    progress = True
    while progress and len(values) < len(d.nodes):
        progress = False
        for arrow in d.arrows:
            if arrow.source in values and arrow.target not in values:
                values[arrow.target] = hom_apply(arrow.hom, values[arrow.source])
                progress = True
    missing = [i for i in range(len(d.nodes)) if i not in values]
    if missing:
        raise ShapeMismatchError(
            f"Nodes {missing} cannot be reached from the given components",
            details={"missing": missing},
        )
    return [values[i] for i in range(len(d.nodes))]


def lift(
    d: Diagram,
    limit_cone: Cone,
    components: Mapping[int, WeilElement],
    report: Optional[LimitReport] = None,
) -> WeilElement:
    """
    The apex element whose legs give ``components``.

    Components may be given on a subset of nodes; the rest are filled along
    arrows before compatibility is checked.
    """
    report = report or _require_limit(d, limit_cone)
    full = complete_tuple(d, components)
    for k, arrow in enumerate(d.arrows):
        if hom_apply(arrow.hom, full[arrow.source]) != full[arrow.target]:
            raise NoMediatorError(
                f"Components are incompatible along arrow {k} ({arrow.label})",
                details={"arrow": k},
            )
    coords = report.limit.coordinates(d.join(full))
    if coords is None:
        raise NoMediatorError("Components leave the compatible subspace")
    return WeilElement.from_vector(report.cone.apex, _solve_apex(report, coords))

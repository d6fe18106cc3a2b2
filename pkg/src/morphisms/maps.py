"""
Infinitesimal maps between simplicial objects.

A map f: A -> B is the list of its component polynomials, one per
coordinate of B, each an element of W_A without constant term. The map is
valid when the components satisfy every relation of B: each squares to zero
and the product over each forbidden set of B vanishes.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import structlog

from src.algebra.simplicial import SimplicialObject, block_offsets, oplus_all
from src.algebra.weil import WeilElement
from src.errors import KernelError

logger = structlog.get_logger(__name__)


class ArityMismatchError(KernelError):
    """Component count or component algebra does not fit the declared objects."""

    error_type = "arity-mismatch"


class NonzeroConstantTermError(KernelError):
    """A component has a nonzero constant term."""

    error_type = "nonzero-constant-term"


class ObjectMismatchError(KernelError):
    """Maps or homs were chained through different objects."""

    error_type = "object-mismatch"


class TargetMismatchError(KernelError):
    """Maps combined with ⊕ do not share a target."""

    error_type = "target-mismatch"


class InvalidMapError(KernelError):
    """A map that fails validation was used where a valid one is required."""

    error_type = "invalid-map"


class Coordinates:
    """1-indexed access to the coordinates d1..dn of a source object."""

    def __init__(self, source: SimplicialObject):
        self._generators = WeilElement.generators(source)

    def __getitem__(self, i: int) -> WeilElement:
        if not 1 <= i <= len(self._generators):
            raise IndexError(f"Coordinate d{i} does not exist")
        return self._generators[i - 1]


ComponentLike = Union[WeilElement, int]


@dataclass(frozen=True)
class InfinitesimalMap:
    """A polynomial map ``source -> target``."""

    source: SimplicialObject
    target: SimplicialObject
    components: Tuple[WeilElement, ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if len(components) != self.target.arity:
            raise ArityMismatchError(
                f"Map {self.label} has {len(components)} components, target {self.target} "
                f"needs {self.target.arity}",
                details={"components": len(components), "arity": self.target.arity},
            )
        for j, c in enumerate(components, start=1):
            if c.parent != self.source:
                raise ArityMismatchError(
                    f"Component {j} of {self.label} lives in W_{c.parent}, expected W_{self.source}",
                    details={"component": j},
                )
            if c.constant_term != 0:
                raise NonzeroConstantTermError(
                    f"Component {j} of {self.label} has constant term {c.constant_term}",
                    details={"component": j, "constant": c.constant_term},
                )

    @classmethod
    def from_coordinates(
        cls,
        source: SimplicialObject,
        target: SimplicialObject,
        builder: Callable[[Coordinates], Sequence[ComponentLike]],
        name: Optional[str] = None,
    ) -> "InfinitesimalMap":
        """
        Build a map from a function of the source coordinates.

        Example:
            psi = InfinitesimalMap.from_coordinates(
                D2, C, lambda d: (d[1], d[2], d[1] * d[2]), name="psi"
            )
        """
        raw = builder(Coordinates(source))
        components = [
            c if isinstance(c, WeilElement) else WeilElement.constant(source, c) for c in raw
        ]
        return cls(source, target, tuple(components), name)

    @classmethod
    def identity(cls, obj: SimplicialObject) -> "InfinitesimalMap":
        return cls(obj, obj, WeilElement.generators(obj), f"id_{obj}")

    @classmethod
    def zero(cls, source: SimplicialObject, target: SimplicialObject) -> "InfinitesimalMap":
        return cls(source, target, tuple(WeilElement.zero(source) for _ in range(target.arity)))

    @property
    def label(self) -> str:
        return self.name or f"<map {self.source} -> {self.target}>"

    def renamed(self, name: str) -> "InfinitesimalMap":
        return InfinitesimalMap(self.source, self.target, self.components, name)

    def format(self) -> str:
        return "(" + ", ".join(c.format("d") for c in self.components) + ")"

    def __str__(self) -> str:
        return f"{self.label}: {self.source} -> {self.target} = {self.format()}"


@dataclass(frozen=True)
class Violation:
    """One relation of the target that the components fail."""

    kind: str  # "nilpotency" or "forbidden"
    coordinates: Tuple[int, ...]
    residual: WeilElement

    def describe(self) -> str:
        if self.kind == "nilpotency":
            j = self.coordinates[0]
            return f"component {j} squares to {self.residual.format('d')}, not 0"
        joined = ",".join(str(j) for j in self.coordinates)
        return f"forbidden ({joined}) product is {self.residual.format('d')}, not 0"


@dataclass(frozen=True)
class ValidationReport:
    map_name: str
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        if self.ok:
            return f"{self.map_name}: ok"
        return f"{self.map_name}: " + "; ".join(v.describe() for v in self.violations)


def validate_map(f: InfinitesimalMap) -> ValidationReport:
    """Check every relation of ``f.target`` on the components of ``f``."""
    violations: List[Violation] = []
    for j, c in enumerate(f.components, start=1):
        square = c.mul(c)
        if not square.is_zero():
            violations.append(Violation("nilpotency", (j,), square))
    for forbidden in sorted(f.target.forbidden, key=lambda s: (len(s), s)):
        product = WeilElement.one(f.source)
        for j in forbidden:
            product = product.mul(f.components[j - 1])
            if product.is_zero():
                break
        if not product.is_zero():
            violations.append(Violation("forbidden", forbidden, product))

    report = ValidationReport(f.label, tuple(violations))
    if not report.ok:
        logger.debug("Map failed validation", map=f.label, violations=len(violations))
    return report


def require_valid(f: InfinitesimalMap) -> InfinitesimalMap:
    report = validate_map(f)
    if not report.ok:
        raise InvalidMapError(report.describe(), details={"map": f.label})
    return f


def compose_maps(f: InfinitesimalMap, g: InfinitesimalMap) -> InfinitesimalMap:
    """The composite ``g ∘ f`` for f: A -> B, g: B -> C."""
    if f.target != g.source:
        raise ObjectMismatchError(
            f"Cannot compose {g.label} after {f.label}: {f.target} != {g.source}",
            details={"f_target": f.target, "g_source": g.source},
        )
    components = tuple(c.substitute(f.components) for c in g.components)
    name = f"{g.name}.{f.name}" if f.name and g.name else None
    return InfinitesimalMap(f.source, g.target, components, name)


def shift_into(element: WeilElement, big: SimplicialObject, offset: int) -> WeilElement:
    """Re-index ``element`` by ``offset`` inside the larger object ``big``."""
    return WeilElement(big, {tuple(i + offset for i in m): q for m, q in element.coefficients.items()})


def oplus_maps(fs: Sequence[InfinitesimalMap], name: Optional[str] = None) -> InfinitesimalMap:
    """The map ⊕ sources -> target restricting to ``fs[i]`` on block i."""
    if not fs:
        raise ArityMismatchError("oplus_maps needs at least one map")
    target = fs[0].target
    for f in fs[1:]:
        if f.target != target:
            raise TargetMismatchError(
                f"Cannot combine {fs[0].label} and {f.label}: targets {target} and {f.target}",
                details={"expected": target, "found": f.target, "map": f.label},
            )
    if len(fs) == 1:
        return fs[0] if name is None else fs[0].renamed(name)

    sources = [f.source for f in fs]
    big = oplus_all(sources)
    offsets = block_offsets(sources)
    components = []
    for j in range(target.arity):
        total = WeilElement.zero(big)
        for f, offset in zip(fs, offsets):
            total = total.add(shift_into(f.components[j], big, offset))
        components.append(total)
    label = name or "+".join(f.label for f in fs)
    return InfinitesimalMap(big, target, tuple(components), label)


def block_inclusion(objects: Sequence[SimplicialObject], i: int) -> InfinitesimalMap:
    """Inclusion of block ``i`` (1-based) into ⊕ objects."""
    if not 1 <= i <= len(objects):
        raise IndexError(f"Block {i} out of range 1..{len(objects)}")
    big = oplus_all(objects)
    block = objects[i - 1]
    offset = block_offsets(objects)[i - 1]
    generators = WeilElement.generators(block)
    components: List[WeilElement] = []
    for k in range(1, big.arity + 1):
        local = k - offset
        if 1 <= local <= block.arity:
            components.append(generators[local - 1])
        else:
            components.append(WeilElement.zero(block))
    return InfinitesimalMap(block, big, tuple(components), f"block_{i}")

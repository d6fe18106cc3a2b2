"""
Simplicial infinitesimal objects D^n{p}.

An object is an arity ``n`` plus a family of forbidden index sets. Each
forbidden set (i_1, ..., i_k) stands for the relation d_{i_1}...d_{i_k} = 0;
squares d_i^2 vanish in every object. The Weil algebra of the object has as
basis exactly the square-free monomials that contain no forbidden set.

Basis order is (degree, lexicographic) and is the order used by every matrix
in the kernel.
"""

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import structlog

from src.errors import KernelError

logger = structlog.get_logger(__name__)

Monomial = Tuple[int, ...]
IndexSet = Tuple[int, ...]

UNIT: Monomial = ()


class ObjectDefinitionError(KernelError):
    """Raised when an object is built from an ill-formed forbidden family."""

    error_type = "invalid-object"


class IndexOutOfRangeError(KernelError):
    """Raised when a monomial mentions a coordinate the object does not have."""

    error_type = "index-out-of-range"


def monomial(*indices: int) -> Monomial:
    """Build a monomial from distinct coordinate indices (any order)."""
    support = tuple(sorted(indices))
    if len(set(support)) != len(support):
        raise ValueError(f"Monomial indices must be distinct: {indices}")
    return support


def _normalize_family(arity: int, forbidden: Iterable[Iterable[int]]) -> FrozenSet[IndexSet]:
    sets: List[IndexSet] = []
    for raw in forbidden:
        indices = tuple(raw)
        ordered = tuple(sorted(indices))
        if len(ordered) < 2:
            raise ObjectDefinitionError(
                f"Forbidden set {indices} must have at least two indices",
                details={"forbidden": indices},
            )
        if len(set(ordered)) != len(ordered):
            raise ObjectDefinitionError(
                f"Forbidden set {indices} repeats an index",
                details={"forbidden": indices},
            )
        if ordered[0] < 1 or ordered[-1] > arity:
            raise ObjectDefinitionError(
                f"Forbidden set {indices} leaves the range 1..{arity}",
                details={"forbidden": indices, "arity": arity},
            )
        sets.append(ordered)

    # minimal elements only
    unique = sorted(set(sets), key=lambda s: (len(s), s))
    kept: List[IndexSet] = []
    for candidate in unique:
        as_set = set(candidate)
        if not any(set(k) <= as_set for k in kept):
            kept.append(candidate)
    return frozenset(kept)


@dataclass(frozen=True)
class SimplicialObject:
    """
    The object D^n{p}.

    Compared structurally: two objects are equal when their arities and
    normalized (antichain) forbidden families agree.
    """

    arity: int
    forbidden: FrozenSet[IndexSet] = frozenset()

    def __post_init__(self) -> None:
        if not isinstance(self.arity, int) or self.arity < 1:
            raise ObjectDefinitionError(
                f"Arity must be a positive integer, got {self.arity!r}",
                details={"arity": self.arity},
            )
        object.__setattr__(self, "forbidden", _normalize_family(self.arity, self.forbidden))

    @cached_property
    def _forbidden_sets(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset(f) for f in self.forbidden)

    @cached_property
    def basis(self) -> Tuple[Monomial, ...]:
        """Allowed monomials ordered by (degree, lexicographic)."""
        result: List[Monomial] = [UNIT]
        layer: List[Monomial] = [UNIT]
        while layer:
            next_layer: List[Monomial] = []
            for support in layer:
                start = support[-1] + 1 if support else 1
                for i in range(start, self.arity + 1):
                    candidate = support + (i,)
                    if not self._closes_forbidden(candidate, i):
                        next_layer.append(candidate)
            result.extend(next_layer)
            layer = next_layer
        logger.debug("Basis enumerated", object=str(self), dimension=len(result))
        return tuple(result)

    @cached_property
    def index(self) -> Dict[Monomial, int]:
        """Position of every basis monomial."""
        return {m: position for position, m in enumerate(self.basis)}

    def _closes_forbidden(self, candidate: Monomial, newest: int) -> bool:
        members = set(candidate)
        return any(newest in f and f <= members for f in self._forbidden_sets)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def check_indices(self, indices: Iterable[int]) -> None:
        """Raise IndexOutOfRangeError unless every index lies in 1..arity."""
        for i in indices:
            if not 1 <= i <= self.arity:
                raise IndexOutOfRangeError(
                    f"Index {i} out of range for {self}",
                    details={"index": i, "arity": self.arity},
                )

    def is_forbidden(self, m: Iterable[int]) -> bool:
        """True iff the monomial contains some forbidden set."""
        support = set(m)
        self.check_indices(support)
        return any(f <= support for f in self._forbidden_sets)

    def allows(self, m: Monomial) -> bool:
        """True iff ``m`` (sorted, square-free) is a basis monomial."""
        return m in self.index

    def __str__(self) -> str:
        head = "D" if self.arity == 1 else f"D^{self.arity}"
        if not self.forbidden:
            return head
        family = ",".join(
            "(" + ",".join(str(i) for i in f) + ")"
            for f in sorted(self.forbidden, key=lambda s: (len(s), s))
        )
        return f"{head}{{{family}}}"


def make_Dn(n: int) -> SimplicialObject:
    """D^n: no relations besides squares."""
    return SimplicialObject(n)


def make_D_paren(n: int) -> SimplicialObject:
    """D(n): every product of two distinct coordinates vanishes."""
    return SimplicialObject(n, frozenset(combinations(range(1, n + 1), 2)))


def is_forbidden(m: Iterable[int], obj: SimplicialObject) -> bool:
    return obj.is_forbidden(m)


def basis(obj: SimplicialObject) -> List[Monomial]:
    return list(obj.basis)


def dim(obj: SimplicialObject) -> int:
    return obj.dim


def shift_family(family: Iterable[IndexSet], offset: int) -> List[IndexSet]:
    return [tuple(i + offset for i in f) for f in family]


def oplus(a: SimplicialObject, b: SimplicialObject) -> SimplicialObject:
    """
    The object a ⊕ b.

    Coordinates of ``b`` are shifted past those of ``a``; every product of a
    coordinate of ``a`` with a coordinate of ``b`` is forbidden.
    """
    m = a.arity
    cross = [(i, j + m) for i in range(1, m + 1) for j in range(1, b.arity + 1)]
    family = list(a.forbidden) + shift_family(b.forbidden, m) + cross
    return SimplicialObject(m + b.arity, frozenset(family))


def oplus_all(objects: Sequence[SimplicialObject]) -> SimplicialObject:
    if not objects:
        raise ObjectDefinitionError("oplus of an empty list of objects")
    return reduce(oplus, objects)


def block_offsets(objects: Sequence[SimplicialObject]) -> List[int]:
    """Offset of each block's first coordinate (minus one) inside the ⊕."""
    offsets: List[int] = []
    running = 0
    for obj in objects:
        offsets.append(running)
        running += obj.arity
    return offsets

"""
Algebra homomorphisms between Weil algebras, stored as exact matrices.

``AlgebraHom(domain=A, codomain=B)`` is a map W_A -> W_B; column j is the
image of the j-th basis monomial of W_A in the basis of W_B. A map
f: A -> B induces W_f: W_B -> W_A by substitution, so ``induced_hom`` swaps
the roles of source and target.
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Tuple

import structlog

from src.algebra import matrix as mx
from src.algebra.simplicial import Monomial, SimplicialObject
from src.algebra.weil import WeilElement
from src.morphisms.maps import InfinitesimalMap, ObjectMismatchError, require_valid

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class AlgebraHom:
    """A linear map W_domain -> W_codomain given by its matrix."""

    domain: SimplicialObject
    codomain: SimplicialObject
    matrix: mx.Matrix
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        rows = len(self.matrix)
        cols = len(self.matrix[0]) if self.matrix else 0
        if rows != self.codomain.dim or cols != self.domain.dim:
            raise ValueError(
                f"Matrix shape {rows}x{cols} does not fit W_{self.domain} -> W_{self.codomain} "
                f"({self.codomain.dim}x{self.domain.dim})"
            )

    @classmethod
    def identity(cls, obj: SimplicialObject) -> "AlgebraHom":
        return cls(obj, obj, mx.identity(obj.dim), f"id_W_{obj}")

    @classmethod
    def from_images(
        cls,
        domain: SimplicialObject,
        codomain: SimplicialObject,
        images: List[WeilElement],
        name: Optional[str] = None,
    ) -> "AlgebraHom":
        """Build from the images of the basis monomials of W_domain."""
        columns = [image.to_vector() for image in images]
        return cls(domain, codomain, mx.from_columns(columns, codomain.dim), name)

    @property
    def label(self) -> str:
        return self.name or f"<hom W_{self.domain} -> W_{self.codomain}>"

    def apply(self, element: WeilElement) -> WeilElement:
        if element.parent != self.domain:
            raise ObjectMismatchError(
                f"{self.label} expects an element of W_{self.domain}, got W_{element.parent}",
                details={"expected": self.domain, "found": element.parent},
            )
        return WeilElement.from_vector(self.codomain, mx.matvec(self.matrix, element.to_vector()))

    def image_of(self, m: Monomial) -> WeilElement:
        j = self.domain.index[m]
        return WeilElement.from_vector(self.codomain, mx.column(self.matrix, j))

    def is_unital(self) -> bool:
        return self.image_of(()) == WeilElement.one(self.codomain)

    def multiplicativity_defect(self) -> Optional[Tuple[Monomial, Monomial]]:
        """First basis pair (x, y) with H(xy) != H(x)H(y), or None."""
        images = {m: self.image_of(m) for m in self.domain.basis}
        for x, y in combinations_with_replacement(self.domain.basis, 2):
            left = self.apply(
                WeilElement.basis_element(self.domain, x).mul(
                    WeilElement.basis_element(self.domain, y)
                )
            )
            if left != images[x].mul(images[y]):
                return (x, y)
        return None

    def is_multiplicative(self) -> bool:
        return self.multiplicativity_defect() is None

    def is_bijective(self) -> bool:
        return self.domain.dim == self.codomain.dim and (
            mx.rank(self.matrix, self.domain.dim) == self.domain.dim
        )

    def format(self) -> str:
        """One line per basis monomial: ``X1*X2 -> <image>``."""
        lines = []
        for m in self.domain.basis:
            word = "*".join(f"X{i}" for i in m) or "1"
            lines.append(f"{word} -> {self.image_of(m)}")
        return "\n".join(lines)


def induced_hom(f: InfinitesimalMap) -> AlgebraHom:
    """W_f: W_target -> W_source, X_j -> component j of ``f``."""
    require_valid(f)
    source, target = f.source, f.target
    images: Dict[Monomial, WeilElement] = {(): WeilElement.one(source)}
    for m in target.basis[1:]:
        # basis is downward closed, so the prefix is already computed
        images[m] = images[m[:-1]].mul(f.components[m[-1] - 1])
    name = f"W_{f.name}" if f.name else None
    return AlgebraHom.from_images(target, source, [images[m] for m in target.basis], name)


def hom_compose(h1: AlgebraHom, h2: AlgebraHom) -> AlgebraHom:
    """``h1 ∘ h2`` for h2: W_C -> W_B and h1: W_B -> W_A."""
    if h2.codomain != h1.domain:
        raise ObjectMismatchError(
            f"Cannot compose {h1.label} after {h2.label}: W_{h2.codomain} != W_{h1.domain}",
            details={"inner_codomain": h2.codomain, "outer_domain": h1.domain},
        )
    name = f"{h1.name}.{h2.name}" if h1.name and h2.name else None
    return AlgebraHom(h2.domain, h1.codomain, mx.matmul(h1.matrix, h2.matrix), name)


def hom_equal(h: AlgebraHom, other: AlgebraHom) -> bool:
    return h == other


def hom_apply(h: AlgebraHom, element: WeilElement) -> WeilElement:
    return h.apply(element)


def hom_residual(h: AlgebraHom, other: AlgebraHom) -> List[Tuple[Monomial, WeilElement]]:
    """Basis monomials of the domain on which the two homs disagree, with h - other."""
    if (h.domain, h.codomain) != (other.domain, other.codomain):
        raise ObjectMismatchError(
            f"Homs {h.label} and {other.label} have different shapes",
            details={"left": (h.domain, h.codomain), "right": (other.domain, other.codomain)},
        )
    residual = []
    for m in h.domain.basis:
        difference = h.image_of(m) - other.image_of(m)
        if not difference.is_zero():
            residual.append((m, difference))
    return residual


def describe_residual(residual: List[Tuple[Monomial, WeilElement]], limit: int = 4) -> str:
    parts = []
    for m, difference in residual[:limit]:
        word = "*".join(f"X{i}" for i in m) or "1"
        parts.append(f"{word} -> {difference}")
    if len(residual) > limit:
        parts.append(f"... ({len(residual) - limit} more)")
    return "; ".join(parts)

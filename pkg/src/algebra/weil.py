"""
Exact arithmetic in the Weil algebra W_{D^n{p}}.

Elements are sparse maps from basis monomials to Fractions. Zero
coefficients are never stored, so structural equality is algebraic
equality.
"""

from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import structlog

from src.algebra.simplicial import UNIT, Monomial, SimplicialObject
from src.errors import KernelError

logger = structlog.get_logger(__name__)

Scalar = Union[int, Fraction, str]


class MixedAlgebraError(KernelError):
    """Raised when two elements of different Weil algebras are combined."""

    error_type = "mixed-algebra"


def as_fraction(q: Scalar) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, bool):
        raise TypeError("Booleans are not scalars")
    if isinstance(q, (int, str)):
        return Fraction(q)
    raise TypeError(f"Unsupported scalar {q!r}")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class WeilElement:
    """An element of the Weil algebra of ``parent``."""

    __slots__ = ("parent", "_coefficients")

    def __init__(
        self,
        parent: SimplicialObject,
        coefficients: Optional[Mapping[Iterable[int], Scalar]] = None,
    ):
        self.parent = parent
        reduced: Dict[Monomial, Fraction] = {}
        for raw, q in (coefficients or {}).items():
            indices = tuple(raw)
            parent.check_indices(indices)
            support = tuple(sorted(indices))
            value = as_fraction(q)
            # squares and forbidden products are zero in W
            if value == 0 or len(set(support)) != len(support) or not parent.allows(support):
                continue
            total = reduced.get(support, Fraction(0)) + value
            if total == 0:
                reduced.pop(support, None)
            else:
                reduced[support] = total
        self._coefficients = reduced

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, parent: SimplicialObject) -> "WeilElement":
        return cls(parent)

    @classmethod
    def one(cls, parent: SimplicialObject) -> "WeilElement":
        return cls(parent, {UNIT: 1})

    @classmethod
    def constant(cls, parent: SimplicialObject, q: Scalar) -> "WeilElement":
        return cls(parent, {UNIT: q})

    @classmethod
    def generator(cls, parent: SimplicialObject, i: int) -> "WeilElement":
        """The indeterminate X_i (the coordinate d_i)."""
        return cls(parent, {(i,): 1})

    @classmethod
    def generators(cls, parent: SimplicialObject) -> Tuple["WeilElement", ...]:
        return tuple(cls.generator(parent, i) for i in range(1, parent.arity + 1))

    @classmethod
    def basis_element(cls, parent: SimplicialObject, m: Monomial) -> "WeilElement":
        return cls(parent, {m: 1})

    @classmethod
    def from_vector(cls, parent: SimplicialObject, vector: Sequence[Scalar]) -> "WeilElement":
        if len(vector) != parent.dim:
            raise ValueError(f"Vector length {len(vector)} does not match dim {parent.dim}")
        return cls(parent, {m: q for m, q in zip(parent.basis, vector)})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def coefficients(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._coefficients)

    def coefficient(self, m: Iterable[int]) -> Fraction:
        return self._coefficients.get(tuple(sorted(m)), Fraction(0))

    def terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Nonzero terms in basis order."""
        index = self.parent.index
        return sorted(self._coefficients.items(), key=lambda item: index[item[0]])

    def to_vector(self) -> Tuple[Fraction, ...]:
        return tuple(self._coefficients.get(m, Fraction(0)) for m in self.parent.basis)

    def is_zero(self) -> bool:
        return not self._coefficients

    @property
    def constant_term(self) -> Fraction:
        return self._coefficients.get(UNIT, Fraction(0))

    @property
    def degree(self) -> int:
        """Largest monomial degree; -1 for the zero element."""
        return max((len(m) for m in self._coefficients), default=-1)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms())

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _require_same(self, other: "WeilElement") -> None:
        if other.parent != self.parent:
            raise MixedAlgebraError(
                f"Cannot combine elements of W_{self.parent} and W_{other.parent}",
                details={"left": self.parent, "right": other.parent},
            )

    def _coerce(self, other: object) -> "WeilElement":
        if isinstance(other, WeilElement):
            self._require_same(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return WeilElement.constant(self.parent, other)
        return NotImplemented  # type: ignore[return-value]

    def add(self, other: "WeilElement") -> "WeilElement":
        self._require_same(other)
        merged: Dict[Monomial, Fraction] = dict(self._coefficients)
        for m, q in other._coefficients.items():
            merged[m] = merged.get(m, Fraction(0)) + q
        return WeilElement(self.parent, merged)

    def scale(self, q: Scalar) -> "WeilElement":
        factor = as_fraction(q)
        return WeilElement(self.parent, {m: c * factor for m, c in self._coefficients.items()})

    def mul(self, other: "WeilElement") -> "WeilElement":
        """Product reduced modulo squares and the forbidden sets."""
        self._require_same(other)
        allowed = self.parent.index
        product: Dict[Monomial, Fraction] = {}
        for s, a in self._coefficients.items():
            s_set = set(s)
            for t, b in other._coefficients.items():
                if s_set.intersection(t):
                    continue
                union = tuple(sorted(s_set.union(t)))
                if union not in allowed:
                    continue
                product[union] = product.get(union, Fraction(0)) + a * b
        return WeilElement(self.parent, product)

    def power(self, exponent: int) -> "WeilElement":
        if exponent < 0:
            raise ValueError("Negative powers are not defined in a Weil algebra")
        result = WeilElement.one(self.parent)
        for _ in range(exponent):
            result = result.mul(self)
        return result

    def substitute(self, images: Sequence["WeilElement"]) -> "WeilElement":
        """
        Replace X_i by ``images[i-1]`` and reduce in the images' algebra.

        Well defined only when the images satisfy the relations of
        ``self.parent``; callers validate maps before substituting.
        """
        if len(images) != self.parent.arity:
            raise ValueError(
                f"Expected {self.parent.arity} images, got {len(images)}"
            )
        if not images:
            raise ValueError("Substitution needs at least one image")
        target = images[0].parent
        result = WeilElement.zero(target)
        for m, q in self._coefficients.items():
            term = WeilElement.constant(target, q)
            for i in m:
                term = term.mul(images[i - 1])
                if term.is_zero():
                    break
            result = result.add(term)
        return result

    def __add__(self, other: object) -> "WeilElement":
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return self.add(coerced)

    __radd__ = __add__

    def __neg__(self) -> "WeilElement":
        return self.scale(-1)

    def __sub__(self, other: object) -> "WeilElement":
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return self.add(coerced.scale(-1))

    def __rsub__(self, other: object) -> "WeilElement":
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return coerced.add(self.scale(-1))

    def __mul__(self, other: object) -> "WeilElement":
        if isinstance(other, WeilElement):
            return self.mul(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "WeilElement":
        return self.power(exponent)

    # ------------------------------------------------------------------
    # Comparison and display
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == WeilElement.constant(self.parent, other)
        if not isinstance(other, WeilElement):
            return NotImplemented
        return self.parent == other.parent and self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash((self.parent, frozenset(self._coefficients.items())))

    def format(self, variable: str = "X") -> str:
        """Render as a polynomial, e.g. ``X1 - 2*X1*X2 + 1/3*X3``."""
        if self.is_zero():
            return "0"
        pieces: List[str] = []
        for m, q in self.terms():
            sign = "-" if q < 0 else "+"
            magnitude = abs(q)
            word = "*".join(f"{variable}{i}" for i in m)
            if not word:
                body = format_fraction(magnitude)
            elif magnitude == 1:
                body = word
            else:
                body = f"{format_fraction(magnitude)}*{word}"
            pieces.append(f"{sign} {body}")
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"WeilElement({self.parent}, {self.format()})"


def add(a: WeilElement, b: WeilElement) -> WeilElement:
    return a.add(b)


def scale(q: Scalar, a: WeilElement) -> WeilElement:
    return a.scale(q)


def mul(a: WeilElement, b: WeilElement) -> WeilElement:
    return a.mul(b)

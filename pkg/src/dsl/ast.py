"""
Script syntax tree.

Nodes are frozen dataclasses. Positions are carried for error reporting
but excluded from equality, so a printed-and-reparsed script compares
equal to the original.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from src.algebra.simplicial import SimplicialObject
from src.algebra.weil import WeilElement, format_fraction


@dataclass(frozen=True)
class Position:
    line: int = 0
    col: int = 0

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NOWHERE = Position()


def _pos() -> Position:
    return field(default=NOWHERE, compare=False)  # type: ignore[return-value]


# ----------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------

Exponents = Tuple[int, ...]  # coordinate indices with repetition, sorted


@dataclass(frozen=True)
class Polynomial:
    """
    A polynomial in d1..dn with rational coefficients, kept canonical:
    terms sorted by (degree, indices), no zero coefficients.
    """

    terms: Tuple[Tuple[Exponents, Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, terms: Dict[Exponents, Fraction]) -> "Polynomial":
        cleaned = {tuple(sorted(k)): Fraction(v) for k, v in terms.items() if v != 0}
        return cls(tuple(sorted(cleaned.items(), key=lambda kv: (len(kv[0]), kv[0]))))

    @classmethod
    def constant(cls, q: Fraction) -> "Polynomial":
        return cls.from_mapping({(): q})

    @classmethod
    def coordinate(cls, i: int) -> "Polynomial":
        return cls.from_mapping({(i,): Fraction(1)})

    def as_mapping(self) -> Dict[Exponents, Fraction]:
        return dict(self.terms)

    def add(self, other: "Polynomial") -> "Polynomial":
        total = self.as_mapping()
        for k, v in other.terms:
            total[k] = total.get(k, Fraction(0)) + v
        return Polynomial.from_mapping(total)

    def scale(self, q: Fraction) -> "Polynomial":
        return Polynomial.from_mapping({k: v * q for k, v in self.terms})

    def mul(self, other: "Polynomial") -> "Polynomial":
        product: Dict[Exponents, Fraction] = {}
        for k1, v1 in self.terms:
            for k2, v2 in other.terms:
                k = tuple(sorted(k1 + k2))
                product[k] = product.get(k, Fraction(0)) + v1 * v2
        return Polynomial.from_mapping(product)

    def power(self, exponent: int) -> "Polynomial":
        result = Polynomial.constant(Fraction(1))
        for _ in range(exponent):
            result = result.mul(self)
        return result

    def indices(self) -> Iterable[int]:
        for k, _ in self.terms:
            yield from k

    def evaluate(self, source: SimplicialObject) -> WeilElement:
        """The element of W_source this polynomial denotes."""
        generators = WeilElement.generators(source)
        total = WeilElement.zero(source)
        for k, q in self.terms:
            term = WeilElement.constant(source, q)
            for i in k:
                term = term.mul(generators[i - 1])
            total = total.add(term)
        return total

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for n, (k, q) in enumerate(self.terms):
            magnitude = abs(q)
            word = "*".join(_power_word(k))
            if not word:
                body = format_fraction(magnitude)
            elif magnitude == 1:
                body = word
            else:
                body = f"{format_fraction(magnitude)}*{word}"
            if n == 0:
                parts.append(f"-{body}" if q < 0 else body)
            else:
                parts.append(f" - {body}" if q < 0 else f" + {body}")
        return "".join(parts)


def _power_word(k: Exponents) -> Iterable[str]:
    i = 0
    while i < len(k):
        j = i
        while j < len(k) and k[j] == k[i]:
            j += 1
        count = j - i
        yield f"d{k[i]}" if count == 1 else f"d{k[i]}^{count}"
        i = j


# ----------------------------------------------------------------------
# Object expressions
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DnObject:
    """``D^n { (i,j) ... }``; plain ``D`` is arity 1."""
    arity: int
    forbidden: Tuple[Tuple[int, ...], ...] = ()
    pos: Position = _pos()


@dataclass(frozen=True)
class DParenObject:
    """``D(n)``."""
    arity: int
    pos: Position = _pos()


@dataclass(frozen=True)
class ObjRef:
    name: str
    pos: Position = _pos()


@dataclass(frozen=True)
class OplusExpr:
    operands: Tuple["ObjExpr", ...]
    pos: Position = _pos()


ObjExpr = Union[DnObject, DParenObject, ObjRef, OplusExpr]


# ----------------------------------------------------------------------
# Statements
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class NameRef:
    name: str
    pos: Position = _pos()


@dataclass(frozen=True)
class ObjStmt:
    name: str
    expr: ObjExpr
    pos: Position = _pos()


@dataclass(frozen=True)
class MapStmt:
    name: str
    source: ObjExpr
    target: ObjExpr
    components: Tuple[Polynomial, ...]
    pos: Position = _pos()
    component_positions: Tuple[Position, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class UseStmt:
    """``use <catalog-name> as <name>``."""
    catalog_name: str
    name: str
    pos: Position = _pos()


@dataclass(frozen=True)
class DimStmt:
    expr: ObjExpr
    pos: Position = _pos()


@dataclass(frozen=True)
class LimitCheck:
    """
    ``check pullback`` (chain) or ``check limit`` (cyclic).

    Arrows are maps from the gluing objects into the leg sources; outer node
    k receives ``arrows[2k]`` from leg node k and ``arrows[2k+1]`` from leg
    node k+1.
    """
    kind: str
    apex: ObjExpr
    legs: Tuple[NameRef, ...]
    arrows: Tuple[NameRef, ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class ComposeCheck:
    """``check compose outer . inner == expected``: outer after inner."""
    outer: NameRef
    inner: NameRef
    expected: NameRef
    pos: Position = _pos()


@dataclass(frozen=True)
class ZeroSumCheck:
    witness: NameRef
    parts: Tuple[NameRef, ...]
    pos: Position = _pos()


CheckStmt = Union[LimitCheck, ComposeCheck, ZeroSumCheck]
Statement = Union[ObjStmt, MapStmt, UseStmt, DimStmt, LimitCheck, ComposeCheck, ZeroSumCheck]


@dataclass(frozen=True)
class Script:
    statements: Tuple[Statement, ...] = ()

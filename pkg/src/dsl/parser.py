"""
Script parser: text to syntax tree.

The arpeggio parse tree is reduced by a ``PTNodeVisitor``. Named terminals
are turned into typed values (``NameRef``, ``int``, ``Fraction``,
``Polynomial``) so that every ``visit_*`` method can pick its operands out
of ``children`` by type; plain keyword and punctuation matches arrive as
``str`` and are ignored.
"""

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

import structlog
from arpeggio import NoMatch, ParserPython, PTNodeVisitor, visit_parse_tree

from src.dsl import grammar
from src.dsl.ast import (
    ComposeCheck,
    DimStmt,
    DnObject,
    DParenObject,
    LimitCheck,
    MapStmt,
    NameRef,
    ObjExpr,
    ObjRef,
    ObjStmt,
    OplusExpr,
    Polynomial,
    Position,
    Script,
    UseStmt,
    ZeroSumCheck,
)
from src.dsl.errors import DslSyntaxError

logger = structlog.get_logger(__name__)

_BUILD_LOCK = threading.Lock()
_PARSE_LOCK = threading.Lock()
_PARSERS: Dict[Any, ParserPython] = {}


def _get_parser(root: Any) -> ParserPython:
    with _BUILD_LOCK:
        if root not in _PARSERS:
            _PARSERS[root] = ParserPython(root, grammar.comment, ignore_case=False)
        return _PARSERS[root]


@dataclass(frozen=True)
class _Sign:
    negative: bool


@dataclass(frozen=True)
class _Kind:
    kind: str


@dataclass(frozen=True)
class _CatalogName:
    text: str
    pos: Position


@dataclass(frozen=True)
class _Components:
    polys: Tuple[Polynomial, ...]
    positions: Tuple[Position, ...]


def _of(children: Any, kind: Any) -> List[Any]:
    return [c for c in children if isinstance(c, kind)]


def _as_object(value: Any) -> ObjExpr:
    if isinstance(value, NameRef):
        return ObjRef(value.name, value.pos)
    return value


_OBJECT_TYPES = (DnObject, DParenObject, ObjRef, OplusExpr, NameRef)
_STATEMENT_TYPES = (ObjStmt, MapStmt, UseStmt, DimStmt, LimitCheck, ComposeCheck, ZeroSumCheck)


class ScriptVisitor(PTNodeVisitor):
    """Builds ``src.dsl.ast`` nodes from the parse tree."""

    def __init__(self, parser: ParserPython, source: str):
        super().__init__()
        self.parser = parser
        self.source = source

    def pos(self, node: Any) -> Position:
        line, col = self.parser.pos_to_linecol(node.position)
        return Position(line, col)

    # Terminals

    def visit_integer(self, node, children):
        return int(node.value)

    def visit_rational(self, node, children):
        text = node.value
        if "/" in text:
            numerator, denominator = text.split("/")
            if int(denominator) == 0:
                p = self.pos(node)
                raise DslSyntaxError(f"zero denominator in {text}", p.line, p.col, self.source)
            return Fraction(int(numerator), int(denominator))
        return Fraction(int(text))

    def visit_name(self, node, children):
        return NameRef(node.value, self.pos(node))

    def visit_catalog_name(self, node, children):
        return _CatalogName(node.value, self.pos(node))

    def visit_coordinate(self, node, children):
        return Polynomial.coordinate(int(node.value[1:]))

    def visit_sign(self, node, children):
        return _Sign(node.value == "-")

    def visit_limit_kind(self, node, children):
        return _Kind(node.value)

    # Objects

    def visit_d_paren(self, node, children):
        return DParenObject(_of(children, int)[0], self.pos(node))

    def visit_index_tuple(self, node, children):
        return tuple(_of(children, int))

    def visit_forbidden_family(self, node, children):
        return tuple(_of(children, tuple))

    def visit_d_power(self, node, children):
        exponents = _of(children, int)
        families = _of(children, tuple)
        return DnObject(
            exponents[0] if exponents else 1,
            families[0] if families else (),
            self.pos(node),
        )

    def visit_obj_expr(self, node, children):
        operands = tuple(_as_object(c) for c in _of(children, _OBJECT_TYPES))
        if len(operands) == 1:
            return operands[0]
        return OplusExpr(operands, self.pos(node))

    # Polynomials

    def visit_factor(self, node, children):
        powers = _of(children, int)
        bases = _of(children, (Polynomial, Fraction))
        base = bases[0]
        if isinstance(base, Fraction):
            return Polynomial.constant(base)
        return base.power(powers[0]) if powers else base

    def visit_term(self, node, children):
        result = Polynomial.constant(Fraction(1))
        for factor in _of(children, Polynomial):
            result = result.mul(factor)
        return result

    def visit_poly(self, node, children):
        total = Polynomial()
        negative = False
        for c in children:
            if isinstance(c, _Sign):
                negative = c.negative
            elif isinstance(c, Polynomial):
                total = total.add(c.scale(Fraction(-1)) if negative else c)
                negative = False
        return total

    def visit_components(self, node, children):
        positions = tuple(self.pos(n) for n in node if n.rule_name == "poly")
        return _Components(tuple(_of(children, Polynomial)), positions)

    # Statements

    def visit_name_list(self, node, children):
        return tuple(_of(children, NameRef))

    def visit_obj_stmt(self, node, children):
        target, expr = _of(children, _OBJECT_TYPES)
        return ObjStmt(target.name, _as_object(expr), self.pos(node))

    def visit_map_stmt(self, node, children):
        target, source, codomain = _of(children, _OBJECT_TYPES)
        comps = _of(children, _Components)[0]
        return MapStmt(
            target.name,
            _as_object(source),
            _as_object(codomain),
            comps.polys,
            self.pos(node),
            comps.positions,
        )

    def visit_use_stmt(self, node, children):
        entry = _of(children, _CatalogName)[0]
        alias = _of(children, NameRef)[0]
        return UseStmt(entry.text, alias.name, self.pos(node))

    def visit_dim_stmt(self, node, children):
        return DimStmt(_as_object(_of(children, _OBJECT_TYPES)[0]), self.pos(node))

    def visit_limit_check(self, node, children):
        kind = _of(children, _Kind)[0].kind
        apex = _as_object(_of(children, _OBJECT_TYPES)[0])
        legs, arrows = _of(children, tuple)
        return LimitCheck(kind, apex, legs, arrows, self.pos(node))

    def visit_compose_check(self, node, children):
        outer, inner, expected = _of(children, NameRef)
        return ComposeCheck(outer, inner, expected, self.pos(node))

    def visit_zero_sum_check(self, node, children):
        witness = _of(children, NameRef)[0]
        parts = _of(children, tuple)[0]
        return ZeroSumCheck(witness, parts, self.pos(node))

    def visit_script(self, node, children):
        statements = tuple(_of(children, _STATEMENT_TYPES))
        return Script(statements)

    def visit_object_only(self, node, children):
        return _as_object(_of(children, _OBJECT_TYPES)[0])


def _expected(rule: Any) -> str:
    # named rules report their name, inline literals their text
    return getattr(rule, "rule_name", "") or repr(getattr(rule, "to_match", str(rule)))


def _run(root: Any, text: str, source: str) -> Any:
    parser = _get_parser(root)
    try:
        with _PARSE_LOCK:
            tree = parser.parse(text)
    except NoMatch as e:
        line, col = parser.pos_to_linecol(e.position)
        expected = sorted({_expected(rule) for rule in e.rules})
        raise DslSyntaxError(
            f"unexpected input, expected {' or '.join(expected)}",
            line,
            col,
            source,
            details={"expected": expected},
        ) from e
    return visit_parse_tree(tree, ScriptVisitor(parser, source))


def parse(text: str, source: str = "<script>") -> Script:
    """
    Parse a script.

    Raises:
        DslSyntaxError: With the line and column of the first unparseable token
    """
    script = _run(grammar.script, text, source)
    logger.debug("Script parsed", source=source, statements=len(script.statements))
    return script


def parse_object(text: str, source: str = "<argument>") -> ObjExpr:
    """Parse a bare object expression such as ``D^3 (+) D^3``."""
    return _run(grammar.object_only, text, source)


"""Pretty-printer; its output parses back to an equal syntax tree."""

from functools import singledispatch
from typing import Sequence

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
    Script,
    Statement,
    UseStmt,
    ZeroSumCheck,
)


def format_object(expr: ObjExpr) -> str:
    if isinstance(expr, DnObject):
        head = "D" if expr.arity == 1 else f"D^{expr.arity}"
        if not expr.forbidden:
            return head
        family = " ".join("(" + ",".join(str(i) for i in t) + ")" for t in expr.forbidden)
        return f"{head} {{ {family} }}"
    if isinstance(expr, DParenObject):
        return f"D({expr.arity})"
    if isinstance(expr, ObjRef):
        return expr.name
    if isinstance(expr, OplusExpr):
        return " (+) ".join(format_object(operand) for operand in expr.operands)
    raise TypeError(f"Not an object expression: {expr!r}")


def _names(refs: Sequence[NameRef]) -> str:
    return "[" + ", ".join(r.name for r in refs) + "]"


@singledispatch
def format_statement(stmt: Statement) -> str:
    raise TypeError(f"Not a statement: {stmt!r}")


@format_statement.register
def _(stmt: ObjStmt) -> str:
    return f"obj {stmt.name} = {format_object(stmt.expr)}"


@format_statement.register
def _(stmt: MapStmt) -> str:
    components = ", ".join(p.format() for p in stmt.components)
    return (
        f"map {stmt.name} : {format_object(stmt.source)} -> "
        f"{format_object(stmt.target)} = ({components})"
    )


@format_statement.register
def _(stmt: UseStmt) -> str:
    return f"use {stmt.catalog_name} as {stmt.name}"


@format_statement.register
def _(stmt: DimStmt) -> str:
    return f"dim {format_object(stmt.expr)}"


@format_statement.register
def _(stmt: LimitCheck) -> str:
    return (
        f"check {stmt.kind} {{ apex = {format_object(stmt.apex)}; "
        f"legs = {_names(stmt.legs)}; arrows = {_names(stmt.arrows)} }}"
    )


@format_statement.register
def _(stmt: ComposeCheck) -> str:
    return f"check compose {stmt.outer.name} . {stmt.inner.name} == {stmt.expected.name}"


@format_statement.register
def _(stmt: ZeroSumCheck) -> str:
    return f"check zero-sum {{ witness = {stmt.witness.name}; parts = {_names(stmt.parts)} }}"


def format_script(script: Script) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)

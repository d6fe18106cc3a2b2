"""
PEG grammar of the script language.

One statement per construct, whitespace-insensitive, ``#`` comments to end
of line. Rule functions return arpeggio expressions; ``ParserPython`` turns
them into a parser and the rule names become the ``visit_*`` hooks of the
visitor in ``src.dsl.parser``.
"""

from arpeggio import EOF, OneOrMore, Optional, ZeroOrMore
from arpeggio import RegExMatch as _

GRAMMAR_VERSION = "1"

KEYWORDS = ("obj", "map", "use", "check", "dim", "as", "pullback", "limit", "compose")


def comment():
    return _(r"#[^\n]*")


# Lexical rules


def integer():
    return _(r"\d+")


def rational():
    return _(r"\d+(/\d+)?")


def name():
    # `D` on its own starts an object expression; D2, Dx, E3 are names
    return _(r"(?!D(?![A-Za-z0-9_]))(?!(?:%s)\b)[A-Za-z_][A-Za-z0-9_]*" % "|".join(KEYWORDS))


def catalog_name():
    return _(r"[^\s#]+")


def coordinate():
    return _(r"d\d+")


# Object expressions


def d_paren():
    return _(r"D(?=\s*\(\s*\d)"), "(", integer, ")"


def d_head():
    return _(r"D(?![A-Za-z0-9_])")


def index_tuple():
    return "(", integer, OneOrMore(",", integer), ")"


def forbidden_family():
    return "{", ZeroOrMore(index_tuple, Optional(",")), "}"


def d_power():
    return d_head, Optional("^", integer), Optional(forbidden_family)


def obj_term():
    return [d_paren, d_power, name]


def obj_expr():
    return obj_term, ZeroOrMore("(+)", obj_term)


# Polynomials


def power_suffix():
    return "^", integer


def factor():
    return [(coordinate, Optional(power_suffix)), rational, ("(", poly, ")", Optional(power_suffix))]


def term():
    return factor, ZeroOrMore("*", factor)


def sign():
    return _(r"[+-]")


def poly():
    return Optional(sign), term, ZeroOrMore(sign, term)


def components():
    return "(", poly, ZeroOrMore(",", poly), ")"


# Statements


def obj_stmt():
    return _(r"obj\b"), name, "=", obj_expr


def map_stmt():
    return _(r"map\b"), name, ":", obj_expr, "->", obj_expr, "=", components


def use_stmt():
    return _(r"use\b"), catalog_name, _(r"as\b"), name


def dim_stmt():
    return _(r"dim\b"), obj_expr


def name_list():
    return "[", Optional(name, ZeroOrMore(",", name)), "]"


def limit_kind():
    return _(r"(pullback|limit)\b")


def limit_check():
    return (
        _(r"check\b"),
        limit_kind,
        "{",
        _(r"apex\b"), "=", obj_expr, Optional(";"),
        _(r"legs\b"), "=", name_list, Optional(";"),
        _(r"arrows\b"), "=", name_list, Optional(";"),
        "}",
    )


def compose_check():
    return _(r"check\b"), _(r"compose\b"), name, ".", name, "==", name


def zero_sum_check():
    return (
        _(r"check\b"),
        _(r"zero-sum\b"),
        "{",
        _(r"witness\b"), "=", name, Optional(";"),
        _(r"parts\b"), "=", name_list, Optional(";"),
        "}",
    )


def statement():
    return [obj_stmt, map_stmt, use_stmt, dim_stmt, limit_check, compose_check, zero_sum_check]


def script():
    return ZeroOrMore(statement), EOF


def object_only():
    """Entry point for a bare object expression (``dim`` on the command line)."""
    return obj_expr, EOF

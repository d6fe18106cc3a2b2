"""The script language: objects, maps and checks written as text."""

from src.dsl.ast import Polynomial, Position, Script
from src.dsl.errors import (
    DslSyntaxError,
    RedefinitionError,
    ScriptArityError,
    ScriptError,
    ScriptLimitError,
    ScriptValidationError,
    UnknownNameError,
)
from src.dsl.interpreter import ScriptResult, run_script
from src.dsl.parser import parse, parse_object
from src.dsl.printer import format_object, format_script

__all__ = [
    "Polynomial",
    "Position",
    "Script",
    "DslSyntaxError",
    "RedefinitionError",
    "ScriptArityError",
    "ScriptError",
    "ScriptLimitError",
    "ScriptValidationError",
    "UnknownNameError",
    "ScriptResult",
    "run_script",
    "parse",
    "parse_object",
    "format_object",
    "format_script",
]

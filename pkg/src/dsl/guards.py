"""
Input limits for scripts.

Scripts come from files on the command line; these checks keep a single
statement from asking for an algebra too large to enumerate.
"""

from dataclasses import dataclass

import structlog

from src.dsl.ast import Position
from src.dsl.errors import ScriptLimitError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class ScriptLimits:
    """Configuration for script input limits."""
    max_script_bytes: int = 1 << 20
    max_arity: int = 16


def check_script_size(text: str, limits: ScriptLimits, source: str = "<script>") -> None:
    """
    Reject oversize input before parsing.

    Raises:
        ScriptLimitError: If the UTF-8 encoding exceeds ``max_script_bytes``
    """
    size = len(text.encode("utf-8"))
    if size > limits.max_script_bytes:
        logger.warning("Script too large", source=source, size=size, limit=limits.max_script_bytes)
        raise ScriptLimitError(
            f"script is {size} bytes, limit is {limits.max_script_bytes}",
            1,
            1,
            source,
            details={"size": size, "limit": limits.max_script_bytes},
        )


def check_arity(arity: int, pos: Position, limits: ScriptLimits, source: str = "<script>") -> None:
    """
    Reject objects with more coordinates than ``max_arity``.

    Raises:
        ScriptLimitError: With the position of the offending expression
    """
    if arity > limits.max_arity:
        raise ScriptLimitError(
            f"object has {arity} coordinates, limit is {limits.max_arity}",
            pos.line,
            pos.col,
            source,
            details={"arity": arity, "limit": limits.max_arity},
        )

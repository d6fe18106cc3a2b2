"""Script errors; each carries the line and column it refers to."""

from typing import Any, Dict, Optional

from src.errors import KernelError


class ScriptError(KernelError):
    """Base class for errors located in a script."""

    error_type = "script"

    def __init__(
        self,
        message: str,
        line: int = 0,
        col: int = 0,
        source: str = "<script>",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details=details)
        self.line = line
        self.col = col
        self.source = source

    def __str__(self) -> str:
        return f"{self.source}:{self.line}:{self.col}: {self.error_type}: {self.message}"

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update({"source": self.source, "line": self.line, "col": self.col})
        return data


class DslSyntaxError(ScriptError):
    error_type = "syntax"


class UnknownNameError(ScriptError):
    error_type = "unknown-name"


class RedefinitionError(ScriptError):
    error_type = "redefinition"


class ScriptArityError(ScriptError):
    """Wrong number of components, coordinates or diagram arms."""

    error_type = "arity-mismatch"


class ScriptLimitError(ScriptError):
    """Input larger than the configured limits."""

    error_type = "input-limit"


class ScriptValidationError(ScriptError):
    """A script map that parses but is not a valid map of its objects."""

    error_type = "invalid-map"

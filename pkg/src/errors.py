"""
Error hierarchy for the Weil-algebra kernel.

Every error carries a human message, a stable ``error_type`` string and a
``details`` dictionary so that the CLI can render it and tests can match on
the type without parsing messages.
"""

from typing import Any, Dict, Optional


class KernelError(Exception):
    """Base class for all kernel errors."""

    error_type: str = "kernel"

    def __init__(
        self,
        message: str,
        error_type: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        if error_type is not None:
            self.error_type = error_type
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to a JSON-friendly dictionary."""
        return {
            "error_type": self.error_type,
            "message": self.message,
            "details": {k: str(v) for k, v in self.details.items()},
        }

"""
structlog configuration for the command line.

Logs go to stderr so stdout stays reserved for reports. ``NO_COLOR`` in the
environment turns colours off regardless of config.
"""

import logging
import os
import sys
from typing import Optional

import structlog

LOG_FORMATS = ("console", "json")


def configure_logging(level: str = "WARNING", fmt: str = "console", colors: Optional[bool] = None) -> None:
    """
    Configure structlog process-wide.

    Args:
        level: DEBUG, INFO, WARNING or ERROR
        fmt: "console" for human output, "json" for one JSON object per line
        colors: force colours on or off; defaults to "stderr is a tty"
    """
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level: {level}")
    if fmt not in LOG_FORMATS:
        raise ValueError(f"Unknown log format: {fmt}")

    if colors is None:
        colors = sys.stderr.isatty()
    if os.environ.get("NO_COLOR"):
        colors = False

    renderer = (
        structlog.processors.JSONRenderer()
        if fmt == "json"
        else structlog.dev.ConsoleRenderer(colors=colors)
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

"""
Observability for verification runs.

Provides OpenTelemetry tracing and metrics for checks and script
statements, and structlog configuration.
"""

from src.observability.log_setup import configure_logging
from src.observability.metrics import (
    MetricsCollector,
    MetricsConfig,
    get_metrics,
    setup_metrics,
)
from src.observability.tracing import (
    TracingConfig,
    get_tracer,
    setup_tracing,
    shutdown_tracing,
    trace_check,
    trace_statement,
    trace_sync,
)

__all__ = [
    "configure_logging",
    "MetricsCollector",
    "MetricsConfig",
    "get_metrics",
    "setup_metrics",
    "TracingConfig",
    "get_tracer",
    "setup_tracing",
    "shutdown_tracing",
    "trace_check",
    "trace_statement",
    "trace_sync",
]

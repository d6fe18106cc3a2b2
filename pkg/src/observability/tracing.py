"""
OpenTelemetry tracing for verification runs.

One span per harness check (``check.id``, ``check.location``,
``check.status``, ``check.elapsed_ms``) and one per script statement
(``statement.kind``, ``statement.line``). Commands are wrapped with
``trace_sync``.

Tracing is off unless ``[weil.observability] tracing_enabled`` is set; the
API's no-op tracer stands in until then.
"""

import functools
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, Optional, TypeVar

import structlog
from opentelemetry import trace
from typing_extensions import ParamSpec

logger = structlog.get_logger(__name__)

P = ParamSpec("P")
T = TypeVar("T")

TRACER_NAME = "weil_jacobi"

_NOOP = trace.NoOpTracer()
_active: Optional[trace.Tracer] = None


@dataclass
class TracingConfig:
    """Where spans go and how many are kept."""
    enabled: bool = False
    service_name: str = "weil-jacobi"
    service_version: str = "1.0.0"
    exporter_type: str = "console"  # console, otlp or none
    sample_rate: float = 1.0
    resource_attributes: Dict[str, str] = field(default_factory=dict)


def _span_exporter(exporter_type: str) -> Any:
    kind = exporter_type.lower()
    if kind == "none":
        return None
    if kind == "otlp":
        try:
            from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
        except ImportError as e:
            logger.warning("OTLP exporter missing, spans dropped", error=str(e), install_hint="pip install weil-jacobi[otlp]")
            return None
        return OTLPSpanExporter()
    if kind != "console":
        logger.warning("Unknown span exporter, falling back to console", exporter=exporter_type)

    from opentelemetry.sdk.trace.export import ConsoleSpanExporter

    # stdout is the report
    return ConsoleSpanExporter(out=sys.stderr)


def setup_tracing(config: TracingConfig) -> None:
    """Install an SDK tracer provider, or keep the no-op tracer when disabled."""
    global _active

    if not config.enabled:
        _active = None
        logger.debug("Tracing disabled")
        return

    from opentelemetry.sdk.resources import SERVICE_NAME, SERVICE_VERSION, Resource
    from opentelemetry.sdk.trace import TracerProvider
    from opentelemetry.sdk.trace.export import SimpleSpanProcessor
    from opentelemetry.sdk.trace.sampling import TraceIdRatioBased

    provider = TracerProvider(
        resource=Resource(
            attributes={
                SERVICE_NAME: config.service_name,
                SERVICE_VERSION: config.service_version,
                **config.resource_attributes,
            }
        ),
        sampler=TraceIdRatioBased(config.sample_rate),
    )
    exporter = _span_exporter(config.exporter_type)
    if exporter is not None:
        provider.add_span_processor(SimpleSpanProcessor(exporter))

    # the global provider can only be set once per process; keep our own handle
    _active = provider.get_tracer(TRACER_NAME, config.service_version)
    logger.info("Tracing enabled", exporter=config.exporter_type, sample_rate=config.sample_rate)


def shutdown_tracing() -> None:
    """Back to the no-op tracer; the CLI calls this after every command."""
    global _active
    _active = None


def get_tracer() -> trace.Tracer:
    return _active if _active is not None else _NOOP


def tracing_enabled() -> bool:
    return _active is not None


def trace_sync(
    span_name: Optional[str] = None,
    attributes: Optional[Dict[str, Any]] = None,
) -> Callable[[Callable[P, T]], Callable[P, T]]:
    """
    Wrap a function in a span that records success and exceptions.

    Example:
        @trace_sync("verify_all", {"component": "harness"})
        def verify_all(config): ...
    """

    def decorator(func: Callable[P, T]) -> Callable[P, T]:
        @functools.wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
            with get_tracer().start_as_current_span(span_name or func.__name__) as span:
                if attributes:
                    span.set_attributes(attributes)
                try:
                    result = func(*args, **kwargs)
                except Exception as e:
                    span.set_attribute("success", False)
                    span.record_exception(e)
                    raise
                span.set_attribute("success", True)
                return result

        return wrapper

    return decorator


@contextmanager
def trace_check(check_id: str, location: str, **attributes: Any) -> Iterator[trace.Span]:
    """
    Span around one verification check.

    Example:
        with trace_check("general.limit.G", "general hexagon") as span:
            outcome = check.run()
            span.set_attribute("check.status", "pass")
    """
    with get_tracer().start_as_current_span("check") as span:
        span.set_attributes({"check.id": check_id, "check.location": location, **attributes})
        yield span


@contextmanager
def trace_statement(kind: str, line: int) -> Iterator[trace.Span]:
    with get_tracer().start_as_current_span("statement") as span:
        span.set_attributes({"statement.kind": kind, "statement.line": line})
        yield span

"""
Counters and latency for checks, script statements and kernel errors.

With ``metrics_enabled`` the values go to OpenTelemetry instruments;
otherwise they are tallied in memory and readable through ``get_stats``.
"""

import sys
import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

import structlog

logger = structlog.get_logger(__name__)

# name -> (kind, unit, description)
INSTRUMENTS = {
    "checks": ("counter", "1", "Checks run, by status"),
    "check_latency": ("histogram", "ms", "Wall time of one check"),
    "statements": ("counter", "1", "Script statements evaluated"),
    "errors": ("counter", "1", "Kernel errors surfaced to the user"),
}

_collector: Optional["MetricsCollector"] = None


@dataclass
class MetricsConfig:
    enabled: bool = False
    exporter_type: str = "console"  # console or none
    service_name: str = "weil-jacobi"
    export_interval_seconds: int = 60


def setup_metrics(config: MetricsConfig) -> "MetricsCollector":
    """Install the process collector, backed by a meter provider when enabled."""
    global _collector

    if not config.enabled:
        _collector = MetricsCollector()
        return _collector

    from opentelemetry.sdk.metrics import MeterProvider
    from opentelemetry.sdk.metrics.export import ConsoleMetricExporter, PeriodicExportingMetricReader
    from opentelemetry.sdk.resources import SERVICE_NAME, Resource

    readers = []
    if config.exporter_type.lower() == "console":
        readers.append(
            PeriodicExportingMetricReader(
                ConsoleMetricExporter(out=sys.stderr),
                export_interval_millis=config.export_interval_seconds * 1000,
            )
        )
    provider = MeterProvider(resource=Resource(attributes={SERVICE_NAME: config.service_name}), metric_readers=readers)
    _collector = MetricsCollector(enabled=True, meter=provider.get_meter("weil_jacobi"))
    logger.info("Metrics enabled", exporter=config.exporter_type)
    return _collector


def get_metrics() -> "MetricsCollector":
    global _collector
    if _collector is None:
        _collector = MetricsCollector()
    return _collector


@dataclass
class LatencyMeasurement:
    started: float = field(default_factory=time.perf_counter)
    latency_ms: float = 0.0

    def stop(self) -> None:
        self.latency_ms = (time.perf_counter() - self.started) * 1000


class MetricsCollector:
    """
    Records check outcomes, statement evaluations and errors.

    In-memory keys are ``checks.<status>``, ``statements.<kind>.<true|false>``
    and ``errors.<component>.<error_type>``; latencies are summarised under
    ``histogram.check_latency``.
    """

    def __init__(self, enabled: bool = False, meter: Any = None):
        self.enabled = enabled and meter is not None
        self._instruments: Dict[str, Any] = {}
        self._counts: Counter[str] = Counter()
        self._latencies: List[float] = []

        if self.enabled:
            for name, (kind, unit, description) in INSTRUMENTS.items():
                create = meter.create_counter if kind == "counter" else meter.create_histogram
                self._instruments[name] = create(f"weil_jacobi.{name}", unit=unit, description=description)

    def _count(self, instrument: str, key: str, attributes: Dict[str, str]) -> None:
        if self.enabled:
            self._instruments[instrument].add(1, attributes)
        else:
            self._counts[key] += 1

    def record_check(self, check_id: str, status: str, latency_ms: float) -> None:
        attributes = {"check": check_id, "status": status}
        self._count("checks", f"checks.{status}", attributes)
        if self.enabled:
            self._instruments["check_latency"].record(latency_ms, attributes)
        else:
            self._latencies.append(latency_ms)

    def record_statement(self, kind: str, success: bool = True) -> None:
        outcome = "true" if success else "false"
        self._count("statements", f"statements.{kind}.{outcome}", {"kind": kind, "success": outcome})

    def record_error(self, error_type: str, component: str = "unknown") -> None:
        self._count("errors", f"errors.{component}.{error_type}", {"error_type": error_type, "component": component})

    @contextmanager
    def measure_latency(self) -> Iterator[LatencyMeasurement]:
        """
        Time a block.

        Example:
            with metrics.measure_latency() as m:
                outcome = check.run()
            metrics.record_check(check.check_id, outcome.status.value, m.latency_ms)
        """
        measurement = LatencyMeasurement()
        try:
            yield measurement
        finally:
            measurement.stop()

    def get_stats(self) -> Dict[str, Any]:
        stats: Dict[str, Any] = {"counters": dict(self._counts)}
        if self._latencies:
            stats["histogram.check_latency"] = {
                "count": len(self._latencies),
                "min": min(self._latencies),
                "max": max(self._latencies),
                "avg": sum(self._latencies) / len(self._latencies),
            }
        return stats

    def reset(self) -> None:
        self._counts.clear()
        self._latencies.clear()

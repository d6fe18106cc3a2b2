"""
Tests for the observability module.

Tests tracing, metrics and logging configuration.
"""

import pytest
from unittest.mock import MagicMock


@pytest.fixture(autouse=True)
def no_tracing():
    """Leave tracing disabled after each test."""
    from src.observability.tracing import shutdown_tracing

    yield
    shutdown_tracing()


class TestTracingConfig:
    """Tests for TracingConfig."""

    def test_default_config(self):
        """Test default tracing configuration."""
        from src.observability.tracing import TracingConfig

        config = TracingConfig()
        assert config.enabled is False
        assert config.service_name == "weil-jacobi"
        assert config.exporter_type == "console"
        assert config.sample_rate == 1.0

    def test_custom_config(self):
        """Test custom tracing configuration."""
        from src.observability.tracing import TracingConfig

        config = TracingConfig(enabled=True, service_name="kernel-ci", exporter_type="none", sample_rate=0.5)
        assert config.enabled is True
        assert config.service_name == "kernel-ci"
        assert config.sample_rate == 0.5


class TestTracer:
    """Tests for tracer functionality."""

    def test_noop_when_disabled(self):
        """Test that NoOp tracer is returned when tracing is disabled."""
        from src.observability.tracing import TracingConfig, get_tracer, setup_tracing

        setup_tracing(TracingConfig(enabled=False))
        tracer = get_tracer()
        with tracer.start_as_current_span("anything") as span:
            span.set_attribute("key", "value")
            span.set_attributes({"a": 1})

    def test_tracer_when_enabled(self):
        """Test that a real tracer is returned when enabled."""
        from opentelemetry import trace

        from src.observability.tracing import TracingConfig, get_tracer, setup_tracing, tracing_enabled

        setup_tracing(TracingConfig(enabled=True, exporter_type="none"))
        assert tracing_enabled()
        assert not isinstance(get_tracer(), trace.NoOpTracer)

    def test_shutdown_restores_noop(self):
        """Test shutdown_tracing switches back to the no-op tracer."""
        from opentelemetry import trace

        from src.observability.tracing import TracingConfig, get_tracer, setup_tracing, shutdown_tracing

        setup_tracing(TracingConfig(enabled=True, exporter_type="none"))
        shutdown_tracing()
        assert isinstance(get_tracer(), trace.NoOpTracer)


class TestTracingHelpers:
    """Tests for tracing decorators and context managers."""

    def test_trace_sync_decorator(self):
        """Test sync tracing decorator."""
        from src.observability.tracing import trace_sync

        @trace_sync("add", {"component": "test"})
        def add(x, y):
            return x + y

        assert add(1, 2) == 3
        assert add.__name__ == "add"

    def test_trace_sync_reraises(self):
        """Test the decorator lets exceptions through."""
        from src.observability.tracing import trace_sync

        @trace_sync()
        def broken():
            raise ValueError("nope")

        with pytest.raises(ValueError):
            broken()

    def test_trace_check(self):
        """Test check spans accept extra attributes."""
        from src.observability.tracing import trace_check

        with trace_check("primordial.pullback.C", "primordial pullback", samples=3) as span:
            span.set_attribute("check.status", "pass")

    def test_trace_statement(self):
        """Test statement spans."""
        from src.observability.tracing import trace_statement

        with trace_statement("map", 4) as span:
            assert span is not None

    def test_trace_check_with_tracing_enabled(self):
        """Test check spans work against the SDK tracer."""
        from src.observability.tracing import TracingConfig, setup_tracing, trace_check

        setup_tracing(TracingConfig(enabled=True, exporter_type="none"))
        with trace_check("x.y", "here") as span:
            span.set_attribute("check.status", "fail")


class TestMetricsCollector:
    """Tests for MetricsCollector."""

    def test_record_check_in_memory(self):
        """Test check counters and latency fall back to memory."""
        from src.observability.metrics import MetricsCollector

        collector = MetricsCollector()
        collector.record_check("a", "pass", 10.0)
        collector.record_check("b", "pass", 30.0)
        collector.record_check("c", "fail", 20.0)

        stats = collector.get_stats()
        assert stats["counters"]["checks.pass"] == 2
        assert stats["counters"]["checks.fail"] == 1
        latency = stats["histogram.check_latency"]
        assert (latency["count"], latency["min"], latency["max"], latency["avg"]) == (3, 10.0, 30.0, 20.0)

    def test_record_statement_and_error(self):
        """Test statement and error counters."""
        from src.observability.metrics import MetricsCollector

        collector = MetricsCollector()
        collector.record_statement("map")
        collector.record_statement("map", success=False)
        collector.record_error("invalid-map", "dsl")

        counters = collector.get_stats()["counters"]
        assert counters["statements.map.true"] == 1
        assert counters["statements.map.false"] == 1
        assert counters["errors.dsl.invalid-map"] == 1

    def test_reset(self):
        """Test reset clears everything."""
        from src.observability.metrics import MetricsCollector

        collector = MetricsCollector()
        collector.record_check("a", "pass", 1.0)
        collector.reset()
        assert collector.get_stats() == {"counters": {}}

    def test_enabled_uses_instruments(self):
        """Test an enabled collector records through the meter."""
        from src.observability.metrics import MetricsCollector

        meter = MagicMock()
        collector = MetricsCollector(enabled=True, meter=meter)
        collector.record_check("a", "pass", 5.0)

        counter = meter.create_counter.return_value
        counter.add.assert_called_with(1, {"check": "a", "status": "pass"})
        meter.create_histogram.return_value.record.assert_called_with(5.0, {"check": "a", "status": "pass"})
        assert collector.get_stats() == {"counters": {}}

    def test_measure_latency(self):
        """Test the latency context manager."""
        from src.observability.metrics import MetricsCollector

        with MetricsCollector().measure_latency() as measurement:
            pass
        assert measurement.latency_ms is not None
        assert measurement.latency_ms >= 0


class TestMetricsModule:
    """Tests for metrics module functions."""

    def test_setup_disabled(self):
        """Test disabled setup installs an in-memory collector."""
        from src.observability.metrics import MetricsConfig, get_metrics, setup_metrics

        collector = setup_metrics(MetricsConfig(enabled=False))
        assert collector.enabled is False
        assert get_metrics() is collector


class TestConfigureLogging:
    """Tests for structlog configuration."""

    def test_json_output(self, capsys):
        """Test JSON logs go to stderr."""
        import json

        import structlog

        from src.observability.log_setup import configure_logging

        configure_logging("INFO", "json")
        structlog.get_logger("test").info("checked", check="a")

        captured = capsys.readouterr()
        assert captured.out == ""
        event = json.loads(captured.err.strip().splitlines()[-1])
        assert event["event"] == "checked"
        assert event["check"] == "a"
        assert event["level"] == "info"

    def test_level_filters(self, capsys):
        """Test events below the level are dropped."""
        import structlog

        from src.observability.log_setup import configure_logging

        configure_logging("ERROR", "json")
        structlog.get_logger("test").warning("quiet")
        assert capsys.readouterr().err == ""

    def test_invalid_level(self):
        """Test unknown levels are rejected."""
        from src.observability.log_setup import configure_logging

        with pytest.raises(ValueError):
            configure_logging("LOUD")

    def test_invalid_format(self):
        """Test unknown formats are rejected."""
        from src.observability.log_setup import configure_logging

        with pytest.raises(ValueError):
            configure_logging("INFO", "xml")

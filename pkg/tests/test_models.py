"""
Tests for Pydantic models.

Tests the settings validation and the JSON report shapes.
"""

import json

import pytest
from pydantic import ValidationError


def _result(check_id, status, diagnostic=""):
    from src.harness.checks import CheckResult

    return CheckResult(check_id, f"at {check_id}", status, diagnostic, 1.5)


class TestHarnessSettings:
    """Tests for HarnessSettings."""

    def test_defaults(self):
        """Test default settings."""
        from src.models.config import HarnessSettings

        settings = HarnessSettings()
        assert settings.log_level == "INFO"
        assert settings.seed == 0
        assert settings.parallel == 1
        assert settings.max_random_arity == 8
        assert settings.observability.service_name == "weil-jacobi"

    @pytest.mark.parametrize(
        "field,value",
        [
            ("seed", -1),
            ("seed", 2**64),
            ("parallel", 0),
            ("parallel", 65),
            ("check_timeout_seconds", 0),
            ("max_random_arity", 9),
            ("log_level", "TRACE"),
            ("log_format", "xml"),
        ],
    )
    def test_rejects(self, field, value):
        """Test out-of-range values are rejected."""
        from src.models.config import HarnessSettings

        with pytest.raises(ValidationError):
            HarnessSettings(**{field: value})

    def test_largest_seed(self):
        """Test seeds up to 2**64 - 1 are accepted."""
        from src.models.config import HarnessSettings

        assert HarnessSettings(seed=2**64 - 1).seed == 2**64 - 1

    def test_nested_observability(self):
        """Test the observability table."""
        from src.models.config import HarnessSettings

        settings = HarnessSettings(observability={"tracing_enabled": True, "tracing_exporter": "otlp"})
        assert settings.observability.tracing_enabled is True
        assert settings.observability.tracing_exporter == "otlp"


class TestReport:
    """Tests for the check report."""

    def test_from_results_sorted_and_counted(self):
        """Test entries are sorted by id and counted by status."""
        from src.models.reports import CheckStatus, Report

        report = Report.from_results(
            "run",
            [
                _result("b", CheckStatus.FAIL, "X3 -> X1*X2"),
                _result("a", CheckStatus.PASS),
                _result("c", CheckStatus.ERROR, "shape-mismatch: 2 legs"),
            ],
            seed=4,
        )
        assert [e.id for e in report.checks] == ["a", "b", "c"]
        assert report.summary.model_dump() == {"total": 3, "passed": 1, "failed": 1, "errors": 1}
        assert report.exit_status == 1
        assert not report.ok
        assert report.seed == 4

    def test_all_pass_exit_zero(self):
        """Test exit status 0 iff everything passed."""
        from src.models.reports import CheckStatus, Report

        report = Report.from_results("verify-paper", [_result("a", CheckStatus.PASS)])
        assert report.exit_status == 0
        assert report.ok

    def test_failure_exit_code(self):
        """Test the failure exit status is configurable."""
        from src.models.reports import CheckStatus, Report

        report = Report.from_results("run", [_result("a", CheckStatus.FAIL, "x")], failure_exit=3)
        assert report.exit_status == 3

    def test_empty_report_passes(self):
        """Test a report without checks is a success."""
        from src.models.reports import Report

        report = Report.from_results("run", [])
        assert report.summary.total == 0
        assert report.exit_status == 0

    def test_schema_example(self):
        """Test the schema example is published and is itself a valid report."""
        from src.models.reports import Report

        example = Report.model_json_schema()["example"]
        assert example["checks"][0]["location"].startswith("G4 ")
        assert Report.model_validate(example).ok

    def test_json_field_order(self):
        """Test the JSON keys come out in declaration order."""
        from src.models.reports import SCHEMA_VERSION, CheckStatus, Report

        data = json.loads(Report.from_results("run", [_result("a", CheckStatus.PASS)]).model_dump_json())
        assert list(data) == [
            "schema_version",
            "tool",
            "version",
            "command",
            "seed",
            "checks",
            "summary",
            "exit_status",
        ]
        assert data["schema_version"] == SCHEMA_VERSION
        assert data["checks"][0] == {
            "id": "a",
            "location": "at a",
            "status": "pass",
            "diagnostic": "",
            "elapsed_ms": 1.5,
        }


class TestDimReport:
    """Tests for DimReport."""

    def test_fields(self):
        """Test the dim report."""
        from src.models.reports import DimReport

        report = DimReport(expression="D^3 (+) D^3", object="D^3 (+) D^3", dimension=15)
        data = json.loads(report.model_dump_json())
        assert data["command"] == "dim"
        assert data["dimension"] == 15
        assert data["exit_status"] == 0

    def test_dimension_positive(self):
        """Test dimensions start at 1."""
        from src.models.reports import DimReport

        with pytest.raises(ValidationError):
            DimReport(expression="D", object="D^1", dimension=0)


class TestCatalogReport:
    """Tests for CatalogReport."""

    def test_from_catalog(self, catalog):
        """Test every object, map and corrected reading is listed."""
        from src.models.reports import CatalogReport

        report = CatalogReport.from_catalog(catalog)
        assert len(report.objects) == len(catalog.objects)
        assert len(report.maps) == len(catalog.maps)
        assert len(report.discrepancies) == len(catalog.discrepancies)

        objects = {o.name: o for o in report.objects}
        assert objects["G"].dimension == 16
        assert objects["C"].object == "D^3{(1,3),(2,3)}"
        assert objects["C"].location.startswith("P1: ")
        assert [s.key for s in report.statements][:2] == ["B1", "P1"]

        maps = {m.name: m for m in report.maps}
        assert maps["step_E_2"].components == "(0, 0, -d1, d1)"

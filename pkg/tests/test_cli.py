"""
Tests for the command line.

Runs ``main`` in-process with an explicit argv and captures stdout.
"""

import io
import json

import pytest

FAST_CONFIG = """\
[weil]
log_level = "WARNING"
seed = 3
mediator_samples = 3
functoriality_pairs = 5
random_objects = 5
max_random_arity = 6
"""


@pytest.fixture
def fast_config(tmp_path):
    """A config file with small random suites."""
    path = tmp_path / "weil.toml"
    path.write_text(FAST_CONFIG, encoding="utf-8")
    return str(path)


def run_cli(*argv):
    """Run the CLI and return (exit status, stdout)."""
    from src.cli import main

    out = io.StringIO()
    status = main(list(argv), out=out)
    return status, out.getvalue()


class TestDim:
    """Tests for the dim command."""

    def test_direct_sum(self):
        """Test dim "D^3 (+) D^3" prints 15."""
        status, out = run_cli("dim", "D^3 (+) D^3")
        assert status == 0
        assert out.strip() == "15"

    def test_json(self):
        """Test the JSON dim report."""
        status, out = run_cli("dim", "D^4{(1,3),(2,3)}", "--json")
        data = json.loads(out)
        assert status == 0
        assert data["command"] == "dim"
        assert data["dimension"] == 10
        assert data["object"] == "D^4{(1,3),(2,3)}"
        assert data["expression"] == "D^4 { (1,3) (2,3) }"

    def test_catalog_name(self):
        """Test names resolve against the catalog."""
        status, out = run_cli("dim", "G")
        assert (status, out.strip()) == (0, "16")

    def test_syntax_error(self, capsys):
        """Test a malformed expression exits 2 with a position."""
        status, out = run_cli("dim", "D^3 {")
        assert status == 2
        assert out == ""
        assert "<argument>:1:" in capsys.readouterr().err


class TestRun:
    """Tests for the run command."""

    def test_primordial_script(self, scripts_dir, fast_config):
        """Test the primordial script passes."""
        status, out = run_cli("run", str(scripts_dir / "primordial.wj"), "--config", fast_config)
        assert status == 0
        assert "dim E = 6" in out
        assert "7 checks: 7 passed, 0 failed, 0 errors" in out

    def test_invalid_map_exits_3(self, scripts_dir, capsys):
        """Test an invalid map exits 3 with its position."""
        status, _ = run_cli("run", str(scripts_dir / "invalid_map.wj"))
        assert status == 3
        assert "invalid_map.wj:3:1: invalid-map" in capsys.readouterr().err

    def test_invalid_map_counted(self, scripts_dir):
        """Test a rejected script bumps the error counter."""
        from src.observability.metrics import get_metrics

        run_cli("run", str(scripts_dir / "invalid_map.wj"))
        assert get_metrics().get_stats()["counters"]["errors.dsl.invalid-map"] == 1

    def test_syntax_error_exits_2(self, tmp_path):
        """Test a parse error exits 2."""
        script = tmp_path / "broken.wj"
        script.write_text("obj A = D^2\nmap f : A -> = (d1)\n", encoding="utf-8")
        status, _ = run_cli("run", str(script))
        assert status == 2

    def test_missing_file_exits_2(self, tmp_path):
        """Test an unreadable script exits 2."""
        status, _ = run_cli("run", str(tmp_path / "nope.wj"))
        assert status == 2

    def test_failing_check_exits_1(self, tmp_path):
        """Test a failing check exits 1 and the JSON report says so."""
        script = tmp_path / "fail.wj"
        script.write_text(
            "map f : D -> D = (d1)\nmap z : D -> D = (0)\ncheck compose f . f == z\n",
            encoding="utf-8",
        )
        status, out = run_cli("run", str(script), "--json")
        data = json.loads(out)
        assert status == 1
        assert data["exit_status"] == 1
        assert data["summary"] == {"total": 1, "passed": 0, "failed": 1, "errors": 0}
        assert data["checks"][0]["id"] == "script.L0003.compose"


class TestVerifyPaper:
    """Tests for the verify-paper command."""

    def test_literal_h31(self, fast_config):
        """Test the literal h31 reading reports a target mismatch."""
        status, out = run_cli("verify-paper", "--inject", "literal-h31", "--json", "--config", fast_config)
        data = json.loads(out)
        assert status == 1
        (entry,) = data["checks"]
        assert entry["id"] == "catalog.build"
        assert entry["status"] == "error"
        assert entry["diagnostic"].startswith("target-mismatch")

    def test_stdout_is_only_the_report(self, fast_config, capsys):
        """Test logs stay on stderr so stdout parses as one JSON report."""
        from src.cli import main

        status = main(
            ["verify-paper", "--inject", "literal-h31", "--json", "--config", fast_config, "--log-level", "DEBUG"]
        )
        captured = capsys.readouterr()
        data = json.loads(captured.out)
        assert status == 1
        assert data["command"] == "verify-paper"
        assert "Configuration loaded" in captured.err

    @pytest.mark.slow
    @pytest.mark.integration
    def test_all_pass(self, fast_config):
        """Test every built-in verification passes."""
        status, out = run_cli("verify-paper", "--json", "--config", fast_config)
        data = json.loads(out)
        failures = [c for c in data["checks"] if c["status"] != "pass"]
        assert failures == []
        assert status == 0
        assert data["seed"] == 3
        ids = [c["id"] for c in data["checks"]]
        assert ids == sorted(ids)
        assert "general.limit.G" in ids

    @pytest.mark.slow
    @pytest.mark.integration
    def test_apex_d8(self, fast_config):
        """Test the D^8 apex fails only the G hexagon."""
        status, out = run_cli("verify-paper", "--inject", "apex-d8", "--json", "--config", fast_config)
        data = json.loads(out)
        failed = [c["id"] for c in data["checks"] if c["status"] != "pass"]
        assert status == 1
        assert failed == ["general.limit.G"]

    @pytest.mark.slow
    @pytest.mark.integration
    def test_report_stable_under_parallel(self, fast_config):
        """Test the JSON report only differs in timings across --parallel."""

        def stripped(out):
            data = json.loads(out)
            for check in data["checks"]:
                check.pop("elapsed_ms")
            return data

        _, serial = run_cli("verify-paper", "--json", "--config", fast_config, "--parallel", "1")
        _, parallel = run_cli("verify-paper", "--json", "--config", fast_config, "--parallel", "4")
        assert stripped(serial) == stripped(parallel)

    def test_seed_out_of_range(self):
        """Test seeds must fit in 64 bits."""
        with pytest.raises(SystemExit) as exc_info:
            run_cli("verify-paper", "--seed", str(2**64))
        assert exc_info.value.code == 2


class TestCatalogCommand:
    """Tests for the catalog command."""

    def test_json_listing(self):
        """Test the listing carries objects, maps and corrected readings."""
        status, out = run_cli("catalog", "--json")
        data = json.loads(out)
        assert status == 0
        assert len(data["objects"]) >= 12
        assert len(data["maps"]) >= 30
        names = {d["name"] for d in data["discrepancies"]}
        assert "h31_1" in names
        keys = {s["key"] for s in data["statements"]}
        assert {"P1", "G4"} <= keys
        assert all(m["location"].split(":", 1)[0] in keys for m in data["maps"])

    def test_text_listing(self):
        """Test the human listing."""
        status, out = run_cli("catalog")
        assert status == 0
        assert out.startswith("Statements (")
        assert "G4 W_G is the limit of the hexagon" in out
        assert "Objects (" in out
        assert "Corrected readings (" in out


class TestConfigErrors:
    """Tests for configuration failures."""

    def test_missing_config(self, tmp_path):
        """Test a missing config file exits 4."""
        status, _ = run_cli("dim", "D", "--config", str(tmp_path / "missing.toml"))
        assert status == 4

    def test_invalid_value(self, tmp_path):
        """Test an out-of-range value exits 4."""
        path = tmp_path / "weil.toml"
        path.write_text("[weil]\nparallel = 0\n", encoding="utf-8")
        status, _ = run_cli("dim", "D", "--config", str(path))
        assert status == 4

    def test_malformed_toml(self, tmp_path):
        """Test unparseable TOML exits 4."""
        path = tmp_path / "weil.toml"
        path.write_text("[weil\n", encoding="utf-8")
        status, _ = run_cli("dim", "D", "--config", str(path))
        assert status == 4

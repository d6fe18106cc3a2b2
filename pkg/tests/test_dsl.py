"""
Tests for the script language.

Tests parsing, error positions, printing and script execution.
"""

from fractions import Fraction

import pytest


class TestParser:
    """Tests for parse and parse_object."""

    def test_object_statement(self):
        """Test a family of forbidden sets is read in order."""
        from src.dsl import parse
        from src.dsl.ast import DnObject, ObjStmt

        script = parse("obj C = D^3 { (1,3) (2,3) }")
        assert script.statements == (ObjStmt("C", DnObject(3, ((1, 3), (2, 3)))),)

    def test_commas_in_family_are_optional(self):
        """Test both separators give the same object."""
        from src.dsl import parse

        assert parse("obj C = D^3 {(1,3), (2,3)}") == parse("obj C = D^3 { (1,3) (2,3) }")

    def test_d_paren_and_plain_d(self):
        """Test D(n) and bare D."""
        from src.dsl import parse_object
        from src.dsl.ast import DnObject, DParenObject

        assert parse_object("D(3)") == DParenObject(3)
        assert parse_object("D") == DnObject(1)

    def test_oplus(self):
        """Test D^3 (+) D^3."""
        from src.dsl import parse_object
        from src.dsl.ast import DnObject, OplusExpr

        assert parse_object("D^3 (+) D^3") == OplusExpr((DnObject(3), DnObject(3)))

    def test_names_starting_with_d(self):
        """Test D2 and Dp are names, not objects."""
        from src.dsl import parse_object
        from src.dsl.ast import ObjRef

        assert parse_object("D2") == ObjRef("D2")
        assert parse_object("Dp") == ObjRef("Dp")

    def test_map_statement(self):
        """Test components are read as polynomials."""
        from src.dsl import Polynomial, parse

        (stmt,) = parse("map psi : D^2 -> C = (d1, d2, d1*d2)").statements
        assert stmt.name == "psi"
        assert stmt.components[2] == Polynomial.coordinate(1).mul(Polynomial.coordinate(2))

    def test_polynomial_arithmetic(self):
        """Test powers, signs and rational coefficients."""
        from src.dsl import parse

        (stmt,) = parse("map f : D^3 -> D^2 = ((d1 + d2)^2, -1/2*d3 + d1)").statements
        square, linear = stmt.components
        assert square.format() == "d1^2 + 2*d1*d2 + d2^2"
        assert linear.as_mapping() == {(1,): Fraction(1), (3,): Fraction(-1, 2)}

    def test_comments_and_whitespace(self):
        """Test comments run to end of line."""
        from src.dsl import parse

        script = parse("# header\nobj A = D   # trailing\n\n  dim A\n")
        assert len(script.statements) == 2

    def test_check_statements(self):
        """Test the three check forms."""
        from src.dsl import parse
        from src.dsl.ast import ComposeCheck, LimitCheck, ZeroSumCheck

        script = parse(
            "check pullback { apex = C; legs = [phi, psi]; arrows = [i, i] }\n"
            "check limit { apex = E legs = [a] arrows = [x, y] }\n"
            "check compose theta1 . zeta == step1\n"
            "check zero-sum { witness = s; parts = [a, b, c] }\n"
        )
        pullback, limit, compose, zero_sum = script.statements
        assert isinstance(pullback, LimitCheck) and pullback.kind == "pullback"
        assert isinstance(limit, LimitCheck) and limit.kind == "limit"
        assert isinstance(compose, ComposeCheck)
        assert (compose.outer.name, compose.inner.name) == ("theta1", "zeta")
        assert isinstance(zero_sum, ZeroSumCheck)
        assert [p.name for p in zero_sum.parts] == ["a", "b", "c"]

    def test_use_statement(self):
        """Test catalog names may contain brackets and braces."""
        from src.dsl import parse
        from src.dsl.ast import UseStmt

        (stmt,) = parse("use D^4{(2,4),(3,4)} as A1").statements
        assert stmt == UseStmt("D^4{(2,4),(3,4)}", "A1")

    def test_keyword_is_not_a_name(self):
        """Test keywords cannot be used as names."""
        from src.dsl import DslSyntaxError, parse

        with pytest.raises(DslSyntaxError):
            parse("obj map = D")


class TestSyntaxErrors:
    """Tests for error positions."""

    def test_line_and_column(self):
        """Test the error points past the last good token."""
        from src.dsl import DslSyntaxError, parse

        with pytest.raises(DslSyntaxError) as exc_info:
            parse("obj A = D^2\nmap f : A -> = (d1)", source="bad.wj")
        err = exc_info.value
        assert err.line == 2
        assert err.col > 1
        assert err.error_type == "syntax"
        assert str(err).startswith("bad.wj:2:")

    def test_zero_denominator(self):
        """Test 1/0 is rejected with its position."""
        from src.dsl import DslSyntaxError, parse

        with pytest.raises(DslSyntaxError) as exc_info:
            parse("map f : D -> D = (1/0*d1)")
        assert exc_info.value.col == 19

    def test_to_dict_has_position(self):
        """Test the JSON form of a script error."""
        from src.dsl import DslSyntaxError, parse

        with pytest.raises(DslSyntaxError) as exc_info:
            parse("dim")
        data = exc_info.value.to_dict()
        assert data["error_type"] == "syntax"
        assert data["line"] == 1


class TestPrinter:
    """Tests for the pretty-printer."""

    def test_format_object(self):
        """Test the printed object forms."""
        from src.dsl import format_object, parse_object

        assert format_object(parse_object("D^4{(1,3),(2,3)}")) == "D^4 { (1,3) (2,3) }"
        assert format_object(parse_object("D (+) D(2)")) == "D (+) D(2)"

    @pytest.mark.parametrize("name", ["primordial.wj", "general.wj", "invalid_map.wj"])
    def test_round_trip(self, scripts_dir, name):
        """Test printing then parsing gives the same tree."""
        from src.dsl import format_script, parse

        script = parse((scripts_dir / name).read_text(encoding="utf-8"))
        assert parse(format_script(script)) == script

    def test_round_trip_polynomials(self):
        """Test negative, rational and power terms survive printing."""
        from src.dsl import format_script, parse

        script = parse("map f : D^2 -> D^3 = (-d1, 1/3*d1*d2 - d2, (d1 - d2)^3, 0)")
        assert parse(format_script(script)) == script


class TestAnalysis:
    """Tests for names and shapes, found before anything is evaluated."""

    def test_unknown_name(self):
        """Test an unknown object is reported at its column."""
        from src.dsl import UnknownNameError, run_script

        with pytest.raises(UnknownNameError) as exc_info:
            run_script("map f : D -> X = (d1)")
        assert (exc_info.value.line, exc_info.value.col) == (1, 14)

    def test_unknown_name_reported_before_evaluation(self):
        """Test a late unknown name wins over an early invalid map."""
        from src.dsl import UnknownNameError, run_script

        with pytest.raises(UnknownNameError):
            run_script("map bad : D^2 -> D = (d1 + d2)\ndim Nowhere")

    def test_map_used_as_object(self):
        """Test the hint when a map name appears as an object."""
        from src.dsl import UnknownNameError, run_script

        with pytest.raises(UnknownNameError, match="names a map"):
            run_script("map f : D -> D = (d1)\ndim f")

    def test_redefinition(self):
        """Test a name cannot be bound twice."""
        from src.dsl import RedefinitionError, run_script

        with pytest.raises(RedefinitionError) as exc_info:
            run_script("obj A = D\nobj A = D^2")
        assert (exc_info.value.line, exc_info.value.col) == (2, 1)

    def test_component_count(self):
        """Test the number of components must match the target."""
        from src.dsl import ScriptArityError, run_script

        with pytest.raises(ScriptArityError):
            run_script("map f : D^2 -> D^3 = (d1, d2)")

    def test_coordinate_out_of_range(self):
        """Test d2 does not exist on D, reported at the component."""
        from src.dsl import ScriptArityError, run_script

        with pytest.raises(ScriptArityError) as exc_info:
            run_script("map f : D -> D^2 = (d1, d2)")
        assert exc_info.value.col == 25

    def test_limit_arrow_count(self):
        """Test a cyclic limit of two legs needs four arrows."""
        from src.dsl import ScriptArityError, run_script

        text = (
            "map a : D -> D = (d1)\n"
            "check limit { apex = D; legs = [a, a]; arrows = [a, a] }"
        )
        with pytest.raises(ScriptArityError):
            run_script(text)

    def test_bad_forbidden_set(self):
        """Test a forbidden set outside the coordinates."""
        from src.dsl import ScriptArityError, run_script

        with pytest.raises(ScriptArityError):
            run_script("obj A = D^2 { (1,3) }")

    def test_unknown_catalog_entry(self, catalog):
        """Test use of a name the catalog does not have."""
        from src.dsl import UnknownNameError, run_script

        with pytest.raises(UnknownNameError):
            run_script("use nothing_here as x", catalog=catalog)


class TestLimits:
    """Tests for input limits."""

    def test_arity_limit(self):
        """Test objects larger than max_arity are refused."""
        from src.dsl import ScriptLimitError, run_script
        from src.models.config import HarnessSettings

        with pytest.raises(ScriptLimitError) as exc_info:
            run_script("dim D^5", settings=HarnessSettings(max_arity=4))
        assert exc_info.value.error_type == "input-limit"

    def test_oplus_counts_total_arity(self):
        """Test the limit applies to the whole direct sum."""
        from src.dsl import ScriptLimitError, run_script
        from src.models.config import HarnessSettings

        with pytest.raises(ScriptLimitError):
            run_script("dim D^3 (+) D^3", settings=HarnessSettings(max_arity=5))

    def test_size_limit(self):
        """Test oversize scripts are refused before parsing."""
        from src.dsl import ScriptLimitError, run_script
        from src.models.config import HarnessSettings

        with pytest.raises(ScriptLimitError) as exc_info:
            run_script("dim D^3 (+) D^3 ((", settings=HarnessSettings(max_script_bytes=8))
        assert (exc_info.value.line, exc_info.value.col) == (1, 1)


class TestExecution:
    """Tests for running scripts."""

    def test_dimension_of_e(self):
        """Test dim prints the dimension of W_E."""
        from src.dsl import run_script

        result = run_script("obj E = D^4 { (1,3) (2,3) (1,4) (2,4) (3,4) }\ndim E\ndim D^3 (+) D^3")
        assert result.outputs == ["dim E = 6", "dim D^3 (+) D^3 = 15"]
        assert result.results == []
        assert result.ok

    def test_psi_is_valid(self):
        """Test psi: D^2 -> C builds."""
        from src.dsl import run_script

        result = run_script("obj C = D^3 {(1,3),(2,3)}\nmap psi : D^2 -> C = (d1, d2, d1*d2)")
        assert result.maps["psi"].format() == "(d1, d2, d1*d2)"

    def test_invalid_map(self, scripts_dir):
        """Test a map breaking nilpotency stops the script."""
        from src.dsl import ScriptValidationError, run_script

        text = (scripts_dir / "invalid_map.wj").read_text(encoding="utf-8")
        with pytest.raises(ScriptValidationError) as exc_info:
            run_script(text, source="invalid_map.wj")
        err = exc_info.value
        assert err.error_type == "invalid-map"
        assert err.line == 3
        assert "2*d1*d2" in err.message

    def test_constant_term_is_invalid(self):
        """Test a component with a constant term is an invalid map."""
        from src.dsl import ScriptValidationError, run_script

        with pytest.raises(ScriptValidationError):
            run_script("map f : D -> D = (1 + d1)")

    def test_primordial_script(self, scripts_dir, catalog):
        """Test the hand-written primordial script passes."""
        from src.dsl import run_script

        text = (scripts_dir / "primordial.wj").read_text(encoding="utf-8")
        result = run_script(text, source="primordial.wj", catalog=catalog)
        assert [(r.check_id, r.diagnostic) for r in result.results if not r.passed] == []
        assert len(result.results) == 7
        assert result.outputs == ["dim C = 5", "dim E = 6"]

    @pytest.mark.slow
    def test_general_script(self, scripts_dir, catalog):
        """Test the catalog-based general script passes."""
        from src.dsl import run_script

        text = (scripts_dir / "general.wj").read_text(encoding="utf-8")
        result = run_script(text, source="general.wj", catalog=catalog)
        assert [(r.check_id, r.diagnostic) for r in result.results if not r.passed] == []
        assert result.outputs == ["dim G = 16"]

    def test_failing_compose_is_a_result(self):
        """Test a wrong composite fails as a check, with its location."""
        from src.dsl import run_script
        from src.models.reports import CheckStatus

        text = (
            "map f : D -> D^2 = (d1, 0)\n"
            "map g : D^2 -> D = (d2)\n"
            "map z : D -> D = (d1)\n"
            "check compose g . f == z\n"
        )
        result = run_script(text, source="t.wj")
        (check,) = result.results
        assert check.check_id == "script.L0004.compose"
        assert check.location == "t.wj:4:1"
        assert check.status == CheckStatus.FAIL
        assert not result.ok

    def test_zero_sum_wrong_witness_is_error(self):
        """Test a witness that does not start at D(n) is an error result."""
        from src.dsl import run_script
        from src.models.reports import CheckStatus

        text = (
            "map w : D^2 -> D = (0)\n"
            "map p : D -> D = (0)\n"
            "check zero-sum { witness = w; parts = [p, p] }\n"
        )
        (check,) = run_script(text).results
        assert check.status == CheckStatus.ERROR

    def test_pullback_shape_error_is_error(self):
        """Test a leg outside the apex is an error result, not a crash."""
        from src.dsl import run_script
        from src.models.reports import CheckStatus

        text = (
            "map i : D(2) -> D^2 = (d1, d2)\n"
            "map a : D^2 -> D^3 = (d1, d2, 0)\n"
            "check pullback { apex = D^2; legs = [a, a]; arrows = [i, i] }\n"
        )
        (check,) = run_script(text).results
        assert check.status == CheckStatus.ERROR

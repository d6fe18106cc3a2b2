"""
Command line entry point.

Subcommands:
- ``verify-paper``: build the catalog and run every verification
- ``run FILE``: execute a script
- ``dim EXPR``: dimension of the Weil algebra of an object expression
- ``catalog``: list named objects, maps and corrected readings

Exit codes: 0 all checks pass, 1 a check failed or errored, 2 parse or
script error, 3 a script map is invalid, 4 configuration error.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

import structlog

from src import __version__
from src.algebra.simplicial import make_Dn
from src.config.loader import ConfigError, HarnessConfig, load_config
from src.dsl.ast import ObjRef, OplusExpr
from src.dsl.errors import ScriptError, ScriptValidationError
from src.dsl.interpreter import ScriptAnalyzer, run_script
from src.dsl.guards import ScriptLimits
from src.dsl.parser import parse_object
from src.dsl.printer import format_object
from src.errors import KernelError
from src.harness.catalog import H31_CORRECTED, H31_LITERAL, Catalog, build_catalog
from src.harness.checks import CheckResult, CheckStatus
from src.harness.runner import verify_all
from src.models.reports import CatalogReport, DimReport, Report
from src.observability.log_setup import configure_logging
from src.observability.metrics import MetricsConfig, get_metrics, setup_metrics
from src.observability.tracing import TracingConfig, setup_tracing, shutdown_tracing

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SCRIPT_ERROR = 2
EXIT_INVALID_MAP = 3
EXIT_CONFIG_ERROR = 4

INJECT_APEX_D8 = "apex-d8"
INJECT_LITERAL_H31 = "literal-h31"


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the machine-readable report")
    common.add_argument("--config", type=Path, help="TOML configuration file")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="Override the configured log level",
    )
    common.add_argument("--seed", type=_u64, help="Seed for the random suites")
    common.add_argument("--parallel", type=_positive, help="Checks to run concurrently")
    return common


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be in 0..2^64-1, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="weil-jacobi",
        description="Exact verification of limit diagrams of Weil algebras and the Jacobi identities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify-paper", parents=[common], help="Run every built-in verification")
    verify.add_argument(
        "--inject",
        choices=[INJECT_APEX_D8, INJECT_LITERAL_H31],
        help="Fault injection: replace the general apex by D^8, or use the literal h31 reading",
    )

    run = sub.add_parser("run", parents=[common], help="Execute a script")
    run.add_argument("file", type=Path, help="UTF-8 script file")

    dim = sub.add_parser("dim", parents=[common], help="Dimension of an object expression")
    dim.add_argument("expression", help='Object expression, e.g. "D^3 (+) D^3"')

    sub.add_parser("catalog", parents=[common], help="List the named objects and maps")
    return parser


def _setup(args: argparse.Namespace) -> HarnessConfig:
    # stderr before anything logs; reconfigured once the level is known
    configure_logging(args.log_level or "WARNING")
    config = load_config(str(args.config) if args.config else None).with_overrides(
        seed=args.seed, parallel=args.parallel, log_level=args.log_level
    )
    settings = config.settings
    configure_logging(settings.log_level, settings.log_format)
    obs = settings.observability
    setup_tracing(
        TracingConfig(
            enabled=obs.tracing_enabled,
            service_name=obs.service_name,
            service_version=__version__,
            exporter_type=obs.tracing_exporter,
        )
    )
    setup_metrics(MetricsConfig(enabled=obs.metrics_enabled, service_name=obs.service_name))
    return config


def _print_results(report: Report, out: TextIO) -> None:
    for entry in report.checks:
        line = f"{entry.status.value.upper():5}  {entry.id}  ({entry.elapsed_ms:.1f} ms)"
        if entry.status != CheckStatus.PASS or entry.diagnostic:
            line += f"  {entry.diagnostic}"
        print(line, file=out)
    s = report.summary
    print(
        f"{s.total} checks: {s.passed} passed, {s.failed} failed, {s.errors} errors",
        file=out,
    )


def _emit(report: Report, as_json: bool, out: TextIO) -> int:
    if as_json:
        print(report.model_dump_json(indent=2), file=out)
    else:
        _print_results(report, out)
    return report.exit_status


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace, config: HarnessConfig, out: TextIO) -> int:
    apex = make_Dn(8) if args.inject == INJECT_APEX_D8 else None
    reading = H31_LITERAL if args.inject == INJECT_LITERAL_H31 else H31_CORRECTED
    try:
        summary = verify_all(config, h31_reading=reading, apex_override=apex)
        results = summary.results
    except KernelError as e:
        logger.error("Catalog could not be built", error_type=e.error_type, error=e.message)
        get_metrics().record_error(e.error_type, "catalog")
        results = [
            CheckResult(
                "catalog.build",
                "catalog construction",
                CheckStatus.ERROR,
                f"{e.error_type}: {e.message}",
            )
        ]
    report = Report.from_results(
        "verify-paper", results, seed=config.settings.seed, failure_exit=EXIT_CHECK_FAILED
    )
    return _emit(report, args.json, out)


def cmd_run(args: argparse.Namespace, config: HarnessConfig, out: TextIO) -> int:
    source = str(args.file)
    try:
        text = args.file.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        print(f"{source}: cannot read script: {e}", file=sys.stderr)
        return EXIT_SCRIPT_ERROR

    try:
        result = run_script(text, source, config.settings)
    except ScriptValidationError as e:
        print(str(e), file=sys.stderr)
        get_metrics().record_error(e.error_type, "dsl")
        return EXIT_INVALID_MAP
    except ScriptError as e:
        print(str(e), file=sys.stderr)
        get_metrics().record_error(e.error_type, "dsl")
        return EXIT_SCRIPT_ERROR

    report = Report.from_results(
        "run", result.results, seed=config.settings.seed, failure_exit=EXIT_CHECK_FAILED
    )
    if not args.json:
        for line in result.outputs:
            print(line, file=out)
    return _emit(report, args.json, out)


def _needs_catalog(expr) -> bool:
    if isinstance(expr, ObjRef):
        return True
    if isinstance(expr, OplusExpr):
        return any(_needs_catalog(o) for o in expr.operands)
    return False


def cmd_dim(args: argparse.Namespace, config: HarnessConfig, out: TextIO) -> int:
    settings = config.settings
    limits = ScriptLimits(settings.max_script_bytes, settings.max_arity)
    try:
        expr = parse_object(args.expression)
        catalog: Optional[Catalog] = build_catalog() if _needs_catalog(expr) else None
        analyzer = ScriptAnalyzer("<argument>", limits, lambda: catalog)
        if catalog is not None:
            analyzer.objects.update(catalog.objects)
        obj = analyzer.resolve_object(expr)
    except ScriptError as e:
        print(str(e), file=sys.stderr)
        return EXIT_SCRIPT_ERROR

    if args.json:
        report = DimReport(expression=format_object(expr), object=str(obj), dimension=obj.dim)
        print(report.model_dump_json(indent=2), file=out)
    else:
        print(obj.dim, file=out)
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace, config: HarnessConfig, out: TextIO) -> int:
    catalog = build_catalog()
    report = CatalogReport.from_catalog(catalog)
    if args.json:
        print(report.model_dump_json(indent=2), file=out)
        return EXIT_OK

    print(f"Statements ({len(report.statements)}):", file=out)
    for s in report.statements:
        print(f"  {s.key:3} {s.claim}", file=out)
    print(f"Objects ({len(report.objects)}):", file=out)
    for o in report.objects:
        print(f"  {o.name:20} {o.object:40} dim {o.dimension:<3} {o.location}", file=out)
    print(f"Maps ({len(report.maps)}):", file=out)
    for m in report.maps:
        print(f"  {m.name:12} {m.source} -> {m.target} = {m.components}", file=out)
        print(f"  {'':12} {m.location}", file=out)
    print(f"Corrected readings ({len(report.discrepancies)}):", file=out)
    for d in report.discrepancies:
        print(f"  {d.name}: literal {d.literal}", file=out)
        print(f"  {'':{len(d.name)}}  adopted {d.adopted}", file=out)
        print(f"  {'':{len(d.name)}}  {d.reason}", file=out)
    return EXIT_OK


COMMANDS = {
    "verify-paper": cmd_verify,
    "run": cmd_run,
    "dim": cmd_dim,
    "catalog": cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """Run the command line; returns the exit status."""
    args = build_parser().parse_args(list(argv) if argv is not None else None)
    out = out or sys.stdout
    try:
        config = _setup(args)
    except ConfigError as e:
        print(f"configuration error: {e.message}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    logger.info("Command started", command=args.command)
    try:
        status = COMMANDS[args.command](args, config, out)
    finally:
        shutdown_tracing()
    logger.info("Command finished", command=args.command, exit_status=status)
    return status


if __name__ == "__main__":
    sys.exit(main())

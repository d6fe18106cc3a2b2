"""
Check plumbing shared by the verification suites.

A ``Check`` is a named, located thunk returning an ``Outcome``; ``run_check``
times it and turns it into a ``CheckResult``. Kernel errors raised inside a
check become ``error`` results instead of escaping.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import structlog

from src.errors import KernelError
from src.harness.catalog import Catalog
from src.limits.diagram import Cone, Diagram, is_limit_cone
from src.models.reports import CheckStatus
from src.morphisms.homs import AlgebraHom, describe_residual, hom_compose, hom_residual, induced_hom
from src.morphisms.maps import InfinitesimalMap, validate_map
from src.observability.metrics import get_metrics
from src.observability.tracing import trace_check

logger = structlog.get_logger(__name__)


@dataclass
class CheckResult:
    """Result of one verification."""
    check_id: str
    location: str
    status: CheckStatus
    diagnostic: str = ""
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS


@dataclass(frozen=True)
class Outcome:
    passed: bool
    diagnostic: str = ""

    @classmethod
    def ok(cls, diagnostic: str = "") -> "Outcome":
        return cls(True, diagnostic)

    @classmethod
    def fail(cls, diagnostic: str) -> "Outcome":
        return cls(False, diagnostic or "failed without residual")


@dataclass(frozen=True)
class Check:
    check_id: str
    location: str
    run: Callable[[], Outcome]


def run_check(check: Check) -> CheckResult:
    """Execute one check synchronously."""
    with trace_check(check.check_id, check.location) as span:
        with get_metrics().measure_latency() as latency:
            try:
                outcome = check.run()
                status = CheckStatus.PASS if outcome.passed else CheckStatus.FAIL
                diagnostic = outcome.diagnostic
            except KernelError as e:
                status = CheckStatus.ERROR
                diagnostic = f"{e.error_type}: {e.message}"
                logger.warning("Check raised", check_id=check.check_id, error_type=e.error_type)
        span.set_attribute("check.status", status.value)
        span.set_attribute("check.elapsed_ms", latency.latency_ms)
    return CheckResult(check.check_id, check.location, status, diagnostic, round(latency.latency_ms, 3))


def run_checks(checks: Sequence[Check]) -> List[CheckResult]:
    return sorted((run_check(c) for c in checks), key=lambda r: r.check_id)


# ----------------------------------------------------------------------
# Outcome helpers
# ----------------------------------------------------------------------


def limit_outcome(diagram: Diagram, cone: Cone, expected_dimension: Optional[int] = None) -> Outcome:
    report = is_limit_cone(diagram, cone)
    diagnostic = report.describe()
    if not report.is_limit:
        return Outcome.fail(diagnostic)
    if expected_dimension is not None and report.limit_dimension != expected_dimension:
        return Outcome.fail(f"{diagnostic}, expected {expected_dimension}")
    return Outcome.ok(diagnostic)


def hom_equality_outcome(actual: AlgebraHom, expected: AlgebraHom) -> Outcome:
    residual = hom_residual(actual, expected)
    if residual:
        return Outcome.fail(f"{actual.label} != {expected.label}: {describe_residual(residual)}")
    return Outcome.ok()


def validity_outcome(f: InfinitesimalMap) -> Outcome:
    report = validate_map(f)
    if report.ok:
        return Outcome.ok()
    return Outcome.fail(report.describe())


def composite(*homs: AlgebraHom) -> AlgebraHom:
    """``homs[0] ∘ homs[1] ∘ ...``."""
    result = homs[-1]
    for h in reversed(homs[:-1]):
        result = hom_compose(h, result)
    return result


def witness_checks(
    prefix: str,
    location: str,
    catalog: Catalog,
    witness: str,
    steps: Sequence[str],
) -> List[Check]:
    """Validity, axis and diagonal probes of a sum witness out of D(3)."""

    def valid() -> Outcome:
        return validity_outcome(catalog.map(witness))

    def axes() -> Outcome:
        w = catalog.hom(witness)
        for k, step in enumerate(steps, start=1):
            outcome = hom_equality_outcome(
                hom_compose(catalog.hom(f"axis_{k}"), w), catalog.hom(step)
            )
            if not outcome.passed:
                return Outcome.fail(f"axis {k}: {outcome.diagnostic}")
        return Outcome.ok(f"{len(steps)} axes match")

    def diagonal() -> Outcome:
        f = catalog.map(witness)
        zero = induced_hom(InfinitesimalMap.zero(catalog.obj("D"), f.target))
        return hom_equality_outcome(hom_compose(catalog.hom("diag_3"), catalog.hom(witness)), zero)

    return [
        Check(f"{prefix}.witness.valid", location, valid),
        Check(f"{prefix}.witness.axes", location, axes),
        Check(f"{prefix}.witness.diagonal", location, diagonal),
    ]

"""
Runs every verification concurrently and summarises the outcome.

Checks are CPU-bound and independent; each runs in a worker thread under a
capacity limiter of ``parallel`` slots and a per-check timeout. Results are
sorted by check id, so the report does not depend on scheduling.
"""

import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import anyio
import structlog

from src.algebra.simplicial import SimplicialObject
from src.config.loader import HarnessConfig, get_config
from src.harness.catalog import H31_CORRECTED, Catalog, build_catalog
from src.harness.checks import Check, CheckResult, CheckStatus, run_check
from src.harness.general import general_checks
from src.harness.mediators import mediator_checks
from src.harness.primordial import primordial_checks
from src.harness.properties import catalog_checks, property_checks
from src.observability.metrics import get_metrics
from src.observability.tracing import trace_sync

logger = structlog.get_logger(__name__)


@dataclass
class VerificationSummary:
    """Overall verification result."""
    results: List[CheckResult] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.PASS)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.FAIL)

    @property
    def errors(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.ERROR)

    @property
    def ok(self) -> bool:
        return self.passed == self.total


async def run_checks_concurrently(
    checks: Sequence[Check], parallel: int = 1, timeout_seconds: float = 60.0
) -> List[CheckResult]:
    """
    Run ``checks`` with at most ``parallel`` in flight.

    A check that exceeds ``timeout_seconds`` is reported as ``error``, but its
    worker thread is abandoned, not stopped. It runs on to completion in the
    background, holding CPU, and may delay interpreter exit; its result is
    discarded.
    """
    limiter = anyio.CapacityLimiter(parallel)
    metrics = get_metrics()
    results: List[CheckResult] = []

    async def run_one(check: Check) -> None:
        async with limiter:
            try:
                with anyio.fail_after(timeout_seconds):
                    result = await anyio.to_thread.run_sync(run_check, check, abandon_on_cancel=True)
            except TimeoutError:
                result = CheckResult(
                    check.check_id,
                    check.location,
                    CheckStatus.ERROR,
                    f"timed out after {timeout_seconds}s",
                    timeout_seconds * 1000,
                )
            except Exception as e:
                result = CheckResult(
                    check.check_id,
                    check.location,
                    CheckStatus.ERROR,
                    f"unexpected {type(e).__name__}: {e}",
                )
                logger.error("Check crashed", check_id=check.check_id, error=str(e))
        metrics.record_check(result.check_id, result.status.value, result.elapsed_ms)
        logger.info(
            "Check finished",
            check_id=result.check_id,
            status=result.status.value,
            elapsed_ms=result.elapsed_ms,
        )
        results.append(result)

    async with anyio.create_task_group() as tg:
        for check in checks:
            tg.start_soon(run_one, check)

    return sorted(results, key=lambda r: r.check_id)


def all_checks(
    catalog: Catalog,
    config: HarnessConfig,
    apex_override: Optional[SimplicialObject] = None,
) -> List[Check]:
    settings = config.settings
    return [
        *catalog_checks(catalog),
        *primordial_checks(catalog),
        *general_checks(catalog, apex_override),
        *mediator_checks(catalog, settings.seed, settings.mediator_samples),
        *property_checks(
            catalog,
            settings.seed,
            settings.functoriality_pairs,
            settings.random_objects,
            settings.max_random_arity,
        ),
    ]


@trace_sync("verify_all", {"component": "harness"})
def verify_all(
    config: Optional[HarnessConfig] = None,
    catalog: Optional[Catalog] = None,
    h31_reading: str = H31_CORRECTED,
    apex_override: Optional[SimplicialObject] = None,
) -> VerificationSummary:
    """
    Build the catalog and run every check.

    Raises:
        TargetMismatchError: with ``h31_reading="literal"``; the catalog cannot be built
    """
    config = config or get_config()
    started = time.perf_counter()
    catalog = catalog or build_catalog(h31_reading)
    checks = all_checks(catalog, config, apex_override)
    logger.info("Verification started", checks=len(checks), parallel=config.settings.parallel)

    results = anyio.run(
        run_checks_concurrently,
        checks,
        config.settings.parallel,
        config.settings.check_timeout_seconds,
    )
    summary = VerificationSummary(results, round((time.perf_counter() - started) * 1000, 3))
    logger.info(
        "Verification finished",
        total=summary.total,
        passed=summary.passed,
        failed=summary.failed,
        errors=summary.errors,
        elapsed_ms=summary.elapsed_ms,
    )
    return summary

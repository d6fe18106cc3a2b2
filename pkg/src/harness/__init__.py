"""
The named catalog and every verification of the two Jacobi identities.
"""

from src.harness.catalog import (
    H31_CORRECTED,
    H31_LITERAL,
    Catalog,
    CatalogError,
    Discrepancy,
    build_catalog,
)
from src.harness.checks import Check, CheckResult, CheckStatus, Outcome, run_check
from src.harness.general import verify_general
from src.harness.primordial import verify_primordial
from src.harness.runner import VerificationSummary, verify_all

__all__ = [
    "H31_CORRECTED",
    "H31_LITERAL",
    "Catalog",
    "CatalogError",
    "Discrepancy",
    "build_catalog",
    "Check",
    "CheckResult",
    "CheckStatus",
    "Outcome",
    "run_check",
    "verify_general",
    "verify_primordial",
    "VerificationSummary",
    "verify_all",
]

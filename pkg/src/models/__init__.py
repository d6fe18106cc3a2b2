"""
Pydantic models for configuration and reports.
"""

from src.models.config import HarnessSettings, ObservabilitySettings
from src.models.reports import (
    SCHEMA_VERSION,
    CatalogMapEntry,
    CatalogObjectEntry,
    CatalogReport,
    CheckEntry,
    CheckStatus,
    DimReport,
    DiscrepancyEntry,
    Report,
    StatementEntry,
    Summary,
)

__all__ = [
    # Config
    "HarnessSettings",
    "ObservabilitySettings",
    # Reports
    "SCHEMA_VERSION",
    "CatalogMapEntry",
    "CatalogObjectEntry",
    "CatalogReport",
    "CheckEntry",
    "CheckStatus",
    "DimReport",
    "DiscrepancyEntry",
    "Report",
    "StatementEntry",
    "Summary",
]

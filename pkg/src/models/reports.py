"""
Report models for the command line.

The JSON report is ``Report.model_dump_json()``; field order is the
declaration order below and entries are sorted by check id.
"""

from enum import Enum
from typing import TYPE_CHECKING, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from src import __version__

if TYPE_CHECKING:
    from src.harness.catalog import Catalog
    from src.harness.checks import CheckResult

SCHEMA_VERSION = "1"


class CheckStatus(str, Enum):
    """Check status values."""
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"


class CheckEntry(BaseModel):
    """One check in a report."""
    id: str = Field(..., description="Stable check identifier")
    location: str = Field(..., description="What the check verifies")
    status: CheckStatus = Field(..., description="pass, fail or error")
    diagnostic: str = Field("", description="Residual witness on failure")
    elapsed_ms: float = Field(0.0, ge=0, description="Wall time of the check")


class Summary(BaseModel):
    total: int = Field(..., ge=0)
    passed: int = Field(..., ge=0)
    failed: int = Field(..., ge=0)
    errors: int = Field(..., ge=0)


class Report(BaseModel):
    """
    Machine-readable outcome of one command.

    ``exit_status`` is 0 iff every entry passed.
    """
    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    tool: str = Field("weil-jacobi", description="Tool name")
    version: str = Field(__version__, description="Tool version")
    command: str = Field(..., description="Subcommand that produced the report")
    seed: Optional[int] = Field(None, description="Seed of the random suites")
    checks: List[CheckEntry] = Field(default_factory=list)
    summary: Summary
    exit_status: int = Field(..., ge=0)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "schema_version": "1",
                "tool": "weil-jacobi",
                "version": "1.0.0",
                "command": "verify-paper",
                "seed": 0,
                "checks": [
                    {
                        "id": "general.limit.G",
                        "location": "G4 W_G is the limit of the hexagon of the W_{E[i]}",
                        "status": "pass",
                        "diagnostic": "limit: dim 16 = apex dim 16",
                        "elapsed_ms": 412.5,
                    }
                ],
                "summary": {"total": 1, "passed": 1, "failed": 0, "errors": 0},
                "exit_status": 0,
            }
        }
    )

    @classmethod
    def from_results(
        cls,
        command: str,
        results: Sequence["CheckResult"],
        seed: Optional[int] = None,
        failure_exit: int = 1,
    ) -> "Report":
        entries = sorted(
            (
                CheckEntry(
                    id=r.check_id,
                    location=r.location,
                    status=r.status,
                    diagnostic=r.diagnostic,
                    elapsed_ms=r.elapsed_ms,
                )
                for r in results
            ),
            key=lambda e: e.id,
        )
        passed = sum(1 for e in entries if e.status == CheckStatus.PASS)
        failed = sum(1 for e in entries if e.status == CheckStatus.FAIL)
        errors = sum(1 for e in entries if e.status == CheckStatus.ERROR)
        return cls(
            command=command,
            seed=seed,
            checks=entries,
            summary=Summary(total=len(entries), passed=passed, failed=failed, errors=errors),
            exit_status=0 if passed == len(entries) else failure_exit,
        )

    @property
    def ok(self) -> bool:
        return self.exit_status == 0


class DimReport(BaseModel):
    """Outcome of ``dim``."""
    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    tool: str = Field("weil-jacobi", description="Tool name")
    version: str = Field(__version__, description="Tool version")
    command: str = Field("dim", description="Subcommand that produced the report")
    expression: str = Field(..., description="Object expression as printed back")
    object: str = Field(..., description="Normalised object D^n{...}")
    dimension: int = Field(..., ge=1, description="Dimension of the Weil algebra")
    exit_status: int = Field(0, ge=0)


class StatementEntry(BaseModel):
    key: str
    claim: str


class CatalogObjectEntry(BaseModel):
    name: str
    object: str
    dimension: int
    location: str


class CatalogMapEntry(BaseModel):
    name: str
    source: str
    target: str
    components: str
    location: str


class DiscrepancyEntry(BaseModel):
    """A written reading replaced by the adopted one."""
    name: str
    literal: str
    adopted: str
    reason: str


class CatalogReport(BaseModel):
    """Listing produced by ``catalog``."""
    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    tool: str = Field("weil-jacobi", description="Tool name")
    version: str = Field(__version__, description="Tool version")
    command: str = Field("catalog", description="Subcommand that produced the report")
    statements: List[StatementEntry] = Field(default_factory=list)
    objects: List[CatalogObjectEntry] = Field(default_factory=list)
    maps: List[CatalogMapEntry] = Field(default_factory=list)
    discrepancies: List[DiscrepancyEntry] = Field(default_factory=list)
    exit_status: int = Field(0, ge=0)

    @classmethod
    def from_catalog(cls, catalog: "Catalog") -> "CatalogReport":
        from src.harness.statements import STATEMENTS

        return cls(
            statements=[StatementEntry(key=s.key, claim=s.claim) for s in STATEMENTS.values()],
            objects=[
                CatalogObjectEntry(
                    name=name, object=str(obj), dimension=obj.dim, location=catalog.provenance[name]
                )
                for name, obj in catalog.objects.items()
            ],
            maps=[
                CatalogMapEntry(
                    name=name,
                    source=str(f.source),
                    target=str(f.target),
                    components=f.format(),
                    location=catalog.provenance[name],
                )
                for name, f in catalog.maps.items()
            ],
            discrepancies=[
                DiscrepancyEntry(name=d.name, literal=d.literal, adopted=d.adopted, reason=d.reason)
                for d in catalog.discrepancies.values()
            ],
        )

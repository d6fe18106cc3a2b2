"""
Configuration models for verification runs.

Provides type-safe validation of the ``[weil]`` table.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class ObservabilitySettings(BaseModel):
    """Configuration for observability features."""

    model_config = ConfigDict(extra="ignore")

    tracing_enabled: bool = Field(False, description="Enable OpenTelemetry tracing")
    tracing_exporter: Literal["console", "otlp", "none"] = Field(
        "console", description="Trace exporter type"
    )
    metrics_enabled: bool = Field(False, description="Enable metrics collection")
    service_name: str = Field("weil-jacobi", description="Service name for telemetry")


class HarnessSettings(BaseModel):
    """
    Settings for the verification harness and the script runner.

    Unknown keys are ignored here; the loader logs them.
    """

    model_config = ConfigDict(
        extra="ignore",
        json_schema_extra={
            "example": {
                "log_level": "INFO",
                "seed": 7,
                "parallel": 4,
                "mediator_samples": 100,
                "observability": {"tracing_enabled": True, "tracing_exporter": "console"},
            }
        },
    )

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field("INFO", description="Log level")
    log_format: Literal["console", "json"] = Field("console", description="Log renderer")

    seed: int = Field(0, ge=0, lt=2**64, description="Seed for every random suite")
    parallel: int = Field(1, ge=1, le=64, description="Checks run concurrently")
    check_timeout_seconds: float = Field(60.0, gt=0, description="Per-check time limit")

    mediator_samples: int = Field(100, ge=1, description="Random compatible tuples per closed form")
    functoriality_pairs: int = Field(200, ge=1, description="Random composable pairs")
    random_objects: int = Field(100, ge=1, description="Random objects for the direct-sum laws")
    max_random_arity: int = Field(8, ge=1, le=8, description="Largest arity drawn at random")

    max_script_bytes: int = Field(1 << 20, ge=1, description="Largest script accepted")
    max_arity: int = Field(16, ge=1, le=32, description="Largest arity a script may declare")

    observability: ObservabilitySettings = Field(default_factory=ObservabilitySettings)

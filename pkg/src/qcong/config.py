"""Run configuration, read from QCONG_* environment variables and CLI flags."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from qcong.oracle import DEFAULT_PRECISION
from qcong.transforms import DEFAULT_ORDER
from qcong.types import OracleMode, OutputFormat


class RunConfig(BaseSettings):
    """Settings shared by every command.

    Precedence: explicit CLI flag > QCONG_* environment variable > default.
    """

    model_config = SettingsConfigDict(env_prefix="QCONG_", extra="forbid")

    report_dir: Path = Field(default=Path("qcong-reports"), description="Directory for JSON reports.")
    workers: int = Field(default=1, ge=1, description="Worker processes for independent points.")
    order: int = Field(default=DEFAULT_ORDER, ge=1, description="Truncation order for series checks.")
    precision: int = Field(default=DEFAULT_PRECISION, ge=15, description="Decimal digits for the numeric oracle.")
    oracle: OracleMode = Field(default=OracleMode.OFF, description="Run the root-of-unity cross-check.")
    output: OutputFormat = Field(default=OutputFormat.TEXT, description="Console output format.")
    write_report: bool = Field(default=True, description="Write a JSON report into report_dir.")
    cases_file: Path | None = Field(default=None, description="Custom case file loaded before the run.")

    @field_validator("report_dir")
    @classmethod
    def _usable_directory(cls, value: Path) -> Path:
        if value.exists() and not value.is_dir():
            raise ValueError(f"{value} exists and is not a directory")
        return value

    def ensure_report_dir(self) -> Path:
        """Creates the report directory on demand.

        Raises:
          ValueError: If it cannot be created or is not writable.
        """
        try:
            self.report_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ValueError(f"cannot create report directory {self.report_dir}: {exc.strerror}") from exc
        if not os.access(self.report_dir, os.W_OK):
            raise ValueError(f"report directory {self.report_dir} is not writable")
        return self.report_dir

    def summary(self) -> dict[str, Any]:
        """Settings recorded in reports; no paths that vary between machines."""
        return {
            "workers": self.workers,
            "order": self.order,
            "precision": self.precision,
            "oracle": self.oracle.value,
        }


def load_config(**overrides: Any) -> RunConfig:
    """Builds a RunConfig; ``None`` overrides fall back to the environment/defaults."""
    return RunConfig(**{key: value for key, value in overrides.items() if value is not None})

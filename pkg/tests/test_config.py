"""Tests for run configuration."""

from __future__ import annotations

from pathlib import Path

import pytest
from pydantic import ValidationError

from qcong.config import RunConfig, load_config
from qcong.types import OracleMode, OutputFormat


def test_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("QCONG_WORKERS", "QCONG_ORDER", "QCONG_ORACLE", "QCONG_REPORT_DIR"):
        monkeypatch.delenv(name, raising=False)
    config = load_config()
    assert config.workers == 1
    assert config.order == 100
    assert config.precision == 60
    assert config.oracle is OracleMode.OFF
    assert config.output is OutputFormat.TEXT
    assert config.write_report


def test_environment_overrides_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("QCONG_WORKERS", "3")
    monkeypatch.setenv("QCONG_ORACLE", "on")
    config = load_config()
    assert config.workers == 3
    assert config.oracle is OracleMode.ON


def test_flags_override_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("QCONG_WORKERS", "3")
    assert load_config(workers=2).workers == 2
    assert load_config(workers=None).workers == 3


def test_invalid_values_are_rejected(tmp_path: Path) -> None:
    with pytest.raises(ValidationError):
        RunConfig(workers=0)
    with pytest.raises(ValidationError):
        RunConfig(precision=5)
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(ValidationError, match="not a directory"):
        RunConfig(report_dir=blocker)


def test_ensure_report_dir_creates_it(tmp_path: Path) -> None:
    config = RunConfig(report_dir=tmp_path / "a" / "b")
    assert config.ensure_report_dir().is_dir()


def test_summary_is_machine_independent(tmp_path: Path) -> None:
    summary = RunConfig(report_dir=tmp_path, workers=4).summary()
    assert summary == {"workers": 4, "order": 100, "precision": 60, "oracle": "off"}

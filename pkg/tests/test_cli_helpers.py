"""Tests for CLI helper utilities."""

from __future__ import annotations

import logging

import pytest

from qcong import cli_helpers
from qcong.models import CaseResult, ResultDetail, ScanPoint
from qcong.types import CaseKind, Verdict


def _result(verdict: Verdict, **detail: object) -> CaseResult:
    return CaseResult(
        case="T2",
        params={"d": 4, "n": 3},
        kind=CaseKind.Q_CONGRUENCE,
        verdict=verdict,
        detail=ResultDetail(**detail),
    )


def test_render_validation_table(capsys: pytest.CaptureFixture[str]) -> None:
    errors = [{"loc": ("cases", 0, "range"), "msg": "Field required", "type": "missing"}]
    cli_helpers.render_validation_table(errors, title="Errors", stderr=False)
    out = capsys.readouterr().out
    assert "cases.0.range" in out
    assert "Field required" in out


def test_render_validation_table_on_stderr(capsys: pytest.CaptureFixture[str]) -> None:
    cli_helpers.render_validation_table([{"msg": "bad"}], title="Errors", stderr=True)
    captured = capsys.readouterr()
    assert "<root>" in captured.err
    assert captured.out == ""


def test_render_tables(capsys: pytest.CaptureFixture[str]) -> None:
    results = [_result(Verdict.HOLDS), _result(Verdict.FAILS, failing_factor=[3, 2])]
    cli_helpers.render_results_table(results, title="Results")
    assert "fails at Phi_3^2" in capsys.readouterr().out
    cli_helpers.render_case_summary(results, title="Summary")
    assert "T2" in capsys.readouterr().out
    points = [
        ScanPoint(params={"n": 3}, verdict=Verdict.HOLDS, attained=3),
        ScanPoint(params={"n": 4}, verdict=Verdict.INADMISSIBLE, reason="n == -r (mod d)"),
    ]
    cli_helpers.render_scan_table(points, title="Scan", power=2)
    out = capsys.readouterr().out
    assert "n=3" in out
    assert "n=4" not in out


def test_note_prefers_reason() -> None:
    assert cli_helpers._note(_result(Verdict.INADMISSIBLE, reason="n == -1 (mod d)")) == "n == -1 (mod d)"
    assert cli_helpers._note(_result(Verdict.FAILS, failing_factor=[3, 2], oracle="agrees")) == (
        "fails at Phi_3^2; oracle agrees"
    )


def test_configure_logging_replaces_handlers() -> None:
    cli_helpers.configure_logging(verbose=True)
    cli_helpers.configure_logging(verbose=False)
    logger = logging.getLogger("qcong")
    assert logger.level == logging.WARNING
    assert len(logger.handlers) == 1
    assert not logger.propagate


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("3..9:odd", [3, 5, 7, 9]),
        ("4..10:even", [4, 6, 8, 10]),
        ("1..4", [1, 2, 3, 4]),
        ("-3..-1", [-3, -2, -1]),
        ("5..3", []),
        ("7", [7]),
        ("1, 3, 3, 2", [1, 3, 2]),
        ("-1,1..2", [-1, 1, 2]),
    ],
)
def test_parse_range(text: str, expected: list[int]) -> None:
    assert cli_helpers.parse_range(text) == expected


@pytest.mark.parametrize("text", ["a", "1..", "1..3:prime", ""])
def test_parse_range_rejects_garbage(text: str) -> None:
    with pytest.raises(ValueError):
        cli_helpers.parse_range(text)


def test_parse_extra_options() -> None:
    assert cli_helpers.parse_extra_options(["--n", "3..9:odd", "--d=4", "--max-k", "-1"]) == {
        "n": "3..9:odd",
        "d": "4",
        "max_k": "-1",
    }


@pytest.mark.parametrize("args", [["3"], ["--n"], ["--n", "1", "--n", "2"], ["--", "1"]])
def test_parse_extra_options_rejects_bad_tokens(args: list[str]) -> None:
    with pytest.raises(ValueError):
        cli_helpers.parse_extra_options(args)

"""Tests for report and custom case file models."""

from __future__ import annotations

from typing import Any

import pytest
from pydantic import ValidationError

from qcong.models import (
    CaseResult,
    CustomCase,
    CustomCaseFile,
    ResultDetail,
    RunInfo,
    RunReport,
    ScanPoint,
    ScanSummary,
    Summary,
)
from qcong.types import CaseKind, Verdict


def _result(verdict: Verdict, conjecture: bool = False, millis: int = 5) -> CaseResult:
    return CaseResult(
        case="T1a", params={"n": 3}, kind=CaseKind.Q_CONGRUENCE, verdict=verdict, conjecture=conjecture, millis=millis
    )


def _case(**overrides: Any) -> dict[str, Any]:
    data: dict[str, Any] = {
        "id": "GEOM",
        "parameters": ["n"],
        "qpower": {"beta": 1},
        "range": {"from": 0, "to": "n - 1"},
        "rhs": [],
        "modulus": {"bracket": [["n", 1]]},
        "constraints": "n >= 2",
    }
    data.update(overrides)
    return data


def test_summary_counts_verdicts() -> None:
    results = [
        _result(Verdict.HOLDS),
        _result(Verdict.FAILS),
        _result(Verdict.UNDEFINED, conjecture=True),
        _result(Verdict.INADMISSIBLE),
    ]
    summary = Summary.from_results(results)
    assert summary.checked == 3
    assert (summary.holds, summary.fails, summary.undefined, summary.inadmissible) == (1, 1, 1, 1)
    assert summary.conjecture_failures == 1


def test_theorem_failures_exclude_conjectures() -> None:
    report = RunReport(
        run=RunInfo(command="verify", version="0"),
        results=[_result(Verdict.FAILS), _result(Verdict.FAILS, conjecture=True), _result(Verdict.HOLDS)],
    )
    assert report.theorem_failures == 1
    assert not report.all_inadmissible


def test_all_inadmissible() -> None:
    run = RunInfo(command="verify", version="0")
    assert RunReport(run=run, results=[_result(Verdict.INADMISSIBLE)]).all_inadmissible
    assert not RunReport(run=run).all_inadmissible


def test_stable_dict_drops_wall_clock_fields() -> None:
    run = RunInfo(command="verify", version="0")
    first = RunReport(run=run, results=[_result(Verdict.HOLDS, millis=3)])
    second = RunReport(run=run, results=[_result(Verdict.HOLDS, millis=900)])
    assert first.stable_dict() == second.stable_dict()
    assert "timing" not in first.stable_dict()
    assert "millis" not in first.stable_dict()["results"][0]


def test_report_models_forbid_extra_fields() -> None:
    with pytest.raises(ValidationError):
        ResultDetail(unexpected=1)


def test_power_accepts_inf() -> None:
    assert ResultDetail(valuation="inf").valuation == "inf"
    with pytest.raises(ValidationError):
        ResultDetail(valuation="infinite")


def test_scan_summary() -> None:
    points = [
        ScanPoint(params={"n": 3}, verdict=Verdict.HOLDS, attained=3),
        ScanPoint(params={"n": 4}, verdict=Verdict.INADMISSIBLE, reason="n == -r (mod d)"),
        ScanPoint(params={"n": 7}, verdict=Verdict.FAILS, attained=1),
    ]
    summary = ScanSummary.from_points(points)
    assert (summary.points, summary.holds, summary.fails, summary.inadmissible) == (3, 1, 1, 1)


def test_custom_case_accepts_expressions() -> None:
    case = CustomCase.model_validate(_case())
    assert case.range.from_ == 0
    assert case.range.to == "n - 1"
    assert case.kind == "q-congruence"


@pytest.mark.parametrize(
    ("overrides", "message"),
    [
        ({"modulus": {}}, "at least one factor"),
        ({"parameters": ["n", "n"]}, "unique"),
        ({"parameters": ["2n"]}, "identifier"),
        ({"constraints": "m >= 2"}, "unknown parameter"),
        ({"qpower": {"alpha": "1/3"}}, "not an integer"),
        ({"range": {"to": "n.real"}}, "unsupported syntax"),
        ({"kind": "closed-form"}, "q-congruence"),
        ({"extra": 1}, "extra"),
    ],
)
def test_custom_case_validation_errors(overrides: dict[str, Any], message: str) -> None:
    with pytest.raises(ValidationError, match=message):
        CustomCase.model_validate(_case(**overrides))


def test_triangular_q_power_is_integral() -> None:
    case = CustomCase.model_validate(_case(qpower={"alpha": "1/2", "beta": "1/2"}))
    assert case.qpower.alpha == "1/2"


def test_case_file_rejects_duplicate_ids() -> None:
    with pytest.raises(ValidationError, match="duplicate case ids: GEOM"):
        CustomCaseFile.model_validate({"cases": [_case(), _case()]})


def test_case_file_schema_alias() -> None:
    document = CustomCaseFile.model_validate({"$schema": "./qcong-cases.schema.json", "cases": [_case()]})
    assert document.schema_ == "./qcong-cases.schema.json"
    assert len(document.cases) == 1

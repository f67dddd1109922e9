"""Tests for custom case files and report writing."""

from __future__ import annotations

import io
import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from qcong.cases.driver import evaluate_case
from qcong.cases.registry import CaseRegistry, QCongruenceInstance
from qcong.io import (
    CaseFileSyntaxError,
    custom_case,
    load_custom_case_file,
    load_custom_cases,
    report_path,
    write_report,
)
from qcong.models import CustomCase, RunInfo, RunReport
from qcong.qpoly import LaurentPoly
from qcong.qseries import q_integer
from qcong.types import Verdict

GEOMETRIC_YAML = """\
cases:
  - id: GEOM
    title: sum of q^k is [n]
    parameters: [n]
    qpower: {beta: 1}
    range: {from: 0, to: n - 1}
    modulus:
      bracket: [[n, 1]]
    constraints: n >= 2
"""

T1A_COPY = {
    "id": "MY-T1a",
    "parameters": ["n"],
    "bracket": {"u": 4, "v": 1},
    "pochhammers": [{"a": 1, "d": 2, "e": 2}, {"a": 2, "d": 2, "e": -2}],
    "qpower": {"beta": -1},
    "range": {"from": 0, "to": "n - 1"},
    "rhs": {"shift": 1, "brackets": [["n", 2]]},
    "modulus": {"cyclotomic": [["n", 1]], "bracket": [["n", 2]]},
    "constraints": "n odd; n >= 3",
}


def _write(tmp_path: Path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_load_yaml_case_file(tmp_path: Path) -> None:
    document = load_custom_case_file(_write(tmp_path, "cases.yaml", GEOMETRIC_YAML))
    assert [case.id for case in document.cases] == ["GEOM"]
    assert document.cases[0].range.to == "n - 1"


def test_load_json_case_file_detected_by_content(tmp_path: Path) -> None:
    path = _write(tmp_path, "cases.txt", json.dumps({"cases": [T1A_COPY]}))
    document = load_custom_case_file(path)
    assert document.cases[0].id == "MY-T1a"


def test_load_from_stdin(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr("sys.stdin", io.StringIO(GEOMETRIC_YAML))
    assert load_custom_case_file("-").cases[0].id == "GEOM"


def test_empty_file_has_no_cases(tmp_path: Path) -> None:
    assert load_custom_case_file(_write(tmp_path, "empty.yaml", "")).cases == []


def test_json_syntax_error_reports_position(tmp_path: Path) -> None:
    path = _write(tmp_path, "broken.json", '{"cases": [}')
    with pytest.raises(CaseFileSyntaxError) as excinfo:
        load_custom_case_file(path)
    assert excinfo.value.line == 1
    assert excinfo.value.column is not None
    assert str(excinfo.value).startswith(f"{path}:1:")


def test_yaml_syntax_error_reports_line(tmp_path: Path) -> None:
    path = _write(tmp_path, "broken.yaml", "cases:\n  - id: X\n    parameters: [n\n")
    with pytest.raises(CaseFileSyntaxError) as excinfo:
        load_custom_case_file(path)
    assert excinfo.value.line is not None
    assert excinfo.value.line >= 3


def test_schema_violation_is_a_validation_error(tmp_path: Path) -> None:
    path = _write(tmp_path, "bad.yaml", "cases:\n  - id: X\n    range: {to: 3}\n")
    with pytest.raises(ValidationError):
        load_custom_case_file(path)


def test_custom_case_holds_and_checks_constraints(tmp_path: Path) -> None:
    registry = CaseRegistry()
    (case,) = load_custom_cases(_write(tmp_path, "cases.yaml", GEOMETRIC_YAML), registry)
    assert registry.get("GEOM") is case
    assert case.condition == "n >= 2; q-power exponent integral for every k"
    assert evaluate_case(case, {"n": 6}).verdict is Verdict.HOLDS
    assert evaluate_case(case, {"n": 1}).verdict is Verdict.INADMISSIBLE


def test_custom_copy_of_a_builtin_case_agrees() -> None:
    case = custom_case(CustomCase.model_validate(T1A_COPY))
    instance = case.build({"n": 5})
    assert isinstance(instance, QCongruenceInstance)
    assert instance.rhs == (q_integer(5) ** 2).shift(1)
    assert instance.modulus.describe() == "[5]^2 Phi_5"
    assert evaluate_case(case, {"n": 5}).verdict is Verdict.HOLDS
    assert evaluate_case(case, {"n": 4}).detail.reason == "n odd"


def test_rhs_as_term_list() -> None:
    data = {**T1A_COPY, "id": "TERMS", "rhs": [[0, "1/2"], [2, "n"], [0, "1/2"]]}
    instance = custom_case(CustomCase.model_validate(data)).build({"n": 3})
    assert instance.rhs == LaurentPoly({0: 1, 2: 3})


def test_builtin_ids_cannot_be_redefined(tmp_path: Path) -> None:
    path = _write(tmp_path, "clash.json", json.dumps({"cases": [{**T1A_COPY, "id": "T1a"}]}))
    with pytest.raises(ValueError, match="reserved"):
        load_custom_cases(path, CaseRegistry())


def test_reloading_a_file_replaces_its_cases(tmp_path: Path) -> None:
    registry = CaseRegistry()
    path = _write(tmp_path, "cases.yaml", GEOMETRIC_YAML)
    load_custom_cases(path, registry)
    load_custom_cases(path, registry)
    assert registry.ids().count("GEOM") == 1


def test_report_path_and_write_report(tmp_path: Path) -> None:
    path = report_path(tmp_path / "reports", "verify")
    assert path.name.startswith("qcong-verify-")
    assert path.suffix == ".json"
    written = write_report(RunReport(run=RunInfo(command="verify", version="0")), path)
    data = json.loads(written.read_text(encoding="utf-8"))
    assert data["run"]["command"] == "verify"
    assert data["summary"]["checked"] == 0

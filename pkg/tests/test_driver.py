"""Tests for single-point, family and scan verification."""

from __future__ import annotations

from dataclasses import replace

import pytest

from qcong.cases.driver import (
    SCAN_FAMILIES,
    RunInterrupted,
    ScanGrid,
    VerifyOptions,
    decide,
    evaluate_case,
    expand_ranges,
    run_ordered,
    scan,
    scan_point,
    verify_case,
    verify_family,
    verify_points,
)
from qcong.cases.profiles import profile_points
from qcong.cases.registry import (
    CaseRegistry,
    InadmissibleParametersError,
    InvariantInstance,
    UnknownCaseError,
    get_case,
)
from qcong.models import RunInfo
from qcong.types import CaseKind, Profile, ScanFamily, Verdict


def _interrupt() -> int:
    raise KeyboardInterrupt


def test_verify_case_holds_with_detail() -> None:
    result = verify_case("T1a", {"n": 5})
    assert result.verdict is Verdict.HOLDS
    assert result.kind is CaseKind.Q_CONGRUENCE
    assert result.detail.failing_factor is None
    assert result.detail.attained == {"Phi_5": 3}
    assert not result.theorem_failure


def test_verify_case_integer_detail() -> None:
    result = verify_case("C5", {"p": 3})
    assert result.verdict is Verdict.HOLDS
    assert result.detail.sum == "2673/524288"
    assert result.detail.valuation == 5


def test_verify_case_closed_form() -> None:
    assert verify_case("CF1", {"n": 3}).verdict is Verdict.HOLDS
    assert verify_case("T5-6PHI5", {"r": 1, "n": 3}).verdict is Verdict.HOLDS


def test_verify_case_with_oracle() -> None:
    result = verify_case("T2", {"d": 4, "n": 3}, options=VerifyOptions(oracle=True))
    assert result.verdict is Verdict.HOLDS
    assert result.detail.oracle == "agrees"


def test_verify_case_raises_for_bad_input() -> None:
    with pytest.raises(UnknownCaseError):
        verify_case("T99", {"n": 3})
    with pytest.raises(InadmissibleParametersError):
        verify_case("T1a", {"n": 4})


def test_evaluate_case_reports_inadmissible_points() -> None:
    result = evaluate_case(get_case("T2"), {"d": 4, "n": 4})
    assert result.verdict is Verdict.INADMISSIBLE
    assert result.detail.reason == "n == -1 (mod d)"
    assert not result.theorem_failure


def test_evaluate_case_turns_errors_into_undefined() -> None:
    case = get_case("INV-CYCLO")

    def broken(params: dict[str, int]) -> InvariantInstance:
        raise ZeroDivisionError("boom")

    result = evaluate_case(replace(case, builder=broken), {"n": 3})
    assert result.verdict is Verdict.UNDEFINED
    assert result.detail.reason == "boom"
    assert result.theorem_failure


def test_decide_rejects_unknown_instances() -> None:
    with pytest.raises(TypeError):
        decide(object())  # type: ignore[arg-type]


def test_decide_invariant_failure_keeps_description() -> None:
    verdict, detail = decide(InvariantInstance(lambda: False, "never"))
    assert verdict is Verdict.FAILS
    assert detail.reason == "never"


def test_expand_ranges_in_parameter_order() -> None:
    points = expand_ranges(("d", "n"), {"n": [3, 7], "d": [4]})
    assert points == [{"d": 4, "n": 3}, {"d": 4, "n": 7}]
    with pytest.raises(ValueError, match="unknown"):
        expand_ranges(("n",), {"m": [1]})
    with pytest.raises(ValueError, match="missing"):
        expand_ranges(("d", "n"), {"n": [1]})


def test_verify_family_reports_every_point() -> None:
    results = verify_family("T2", {"d": [4], "n": range(1, 12)})
    assert len(results) == 11
    admissible = [r.params["n"] for r in results if r.verdict is not Verdict.INADMISSIBLE]
    assert admissible == [3, 7, 11]
    assert all(r.verdict is Verdict.HOLDS for r in results if r.params["n"] in admissible)


def test_verify_family_on_a_private_registry() -> None:
    registry = CaseRegistry()
    results = verify_family("INV-CYCLO", {"n": [1, 2, 3]}, registry=registry)
    assert [r.verdict for r in results] == [Verdict.HOLDS] * 3


def test_verify_points_keeps_order_and_fails_fast_on_unknown_ids() -> None:
    results = verify_points([("INV-CYCLO", {"n": 6}), ("T1a", {"n": 3}), ("INV-NEGQ", {"n": 5})])
    assert [r.case for r in results] == ["INV-CYCLO", "T1a", "INV-NEGQ"]
    with pytest.raises(UnknownCaseError):
        verify_points([("INV-CYCLO", {"n": 6}), ("nope", {})])


def test_run_ordered_inline_interrupt_keeps_prefix() -> None:
    tasks = [lambda: 1, lambda: 2, _interrupt, lambda: 4]
    with pytest.raises(RunInterrupted) as excinfo:
        run_ordered(tasks)
    assert excinfo.value.partial == [1, 2]


def test_scan_grid_points() -> None:
    grid = ScanGrid(ScanFamily.NEW_D, {"d": [4], "r": [1], "n": [3, 7]})
    assert grid.points() == [{"d": 4, "r": 1, "n": 3}, {"d": 4, "r": 1, "n": 7}]
    assert ScanGrid(ScanFamily.NEW_D, {"d": [4], "r": [], "n": [3]}).points() == []


def test_scan_families_declare_parameters() -> None:
    assert set(SCAN_FAMILIES) == set(ScanFamily)
    assert SCAN_FAMILIES[ScanFamily.TWO_NK].parameters == ("d", "n")


def test_scan_point_inadmissible_and_holding() -> None:
    skipped = scan_point(ScanFamily.NEW_D, {"d": 4, "r": 1, "n": 4}, 2)
    assert skipped.verdict is Verdict.INADMISSIBLE
    assert skipped.reason == "n == -r (mod d)"
    point = scan_point(ScanFamily.NEW_D, {"d": 4, "r": 1, "n": 3}, 2)
    assert point.verdict is Verdict.HOLDS
    assert point.attained in (2, 3)


def test_scan_of_even_d_family_has_no_failures() -> None:
    report = scan(ScanGrid(ScanFamily.NEW_D, {"d": [4], "r": [1], "n": list(range(1, 32))}))
    assert report.summary.points == 31
    assert report.summary.holds == 8
    assert report.summary.fails == 0
    assert report.summary.inadmissible == 23
    assert report.failures == []
    assert report.run.command == "scan"
    assert not report.timing.interrupted


def test_scan_of_odd_d_finds_counterexamples() -> None:
    run = RunInfo(command="scan", version="test")
    report = scan(ScanGrid(ScanFamily.NEW_D, {"d": [5], "r": [3], "n": list(range(1, 28))}), run=run)
    admissible = [p.params["n"] for p in report.points if p.verdict is not Verdict.INADMISSIBLE]
    assert admissible == [7, 12, 17, 22, 27]
    assert report.summary.fails >= 1
    assert report.run.version == "test"
    assert report.grid == {"d": [5], "r": [3], "n": list(range(1, 28))}


@pytest.mark.slow
def test_quick_profile_verdicts() -> None:
    registry = CaseRegistry()
    results = [
        evaluate_case(registry.get(case_id), params)
        for case_id, params in profile_points(Profile.QUICK, registry)
    ]
    assert [(r.case, r.params) for r in results if r.theorem_failure] == []
    assert [(r.case, r.params) for r in results if r.verdict is not Verdict.HOLDS] == [("QCONJ-4", {"p": 3})]
    counterexample = next(r for r in results if r.case == "QCONJ-4" and r.params == {"p": 3})
    assert counterexample.conjecture
    assert counterexample.verdict is Verdict.FAILS

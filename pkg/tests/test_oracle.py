"""Tests for the numeric root-of-unity cross-check."""

from __future__ import annotations

import mpmath
import pytest

from qcong.cases.profiles import profile_points
from qcong.cases.registry import CaseRegistry, get_case
from qcong.congruence import check_sum_congruence
from qcong.oracle import (
    OraclePrecisionError,
    _classify,
    binomial_coefficient,
    primitive_root_indices,
    root_of_unity_oracle,
    sum_oracle,
)
from qcong.qpoly import LaurentPoly, cyclotomic
from qcong.types import Profile, Verdict

q = LaurentPoly.q()


def test_binomial_coefficient_generalizes_to_negative_top() -> None:
    assert binomial_coefficient(5, 2) == 10
    assert binomial_coefficient(3, 5) == 0
    assert binomial_coefficient(-1, 3) == -1
    assert binomial_coefficient(-2, 2) == 3


def test_primitive_root_indices_keep_one_per_conjugate_pair() -> None:
    assert primitive_root_indices(1) == [0]
    assert primitive_root_indices(2) == [1]
    assert primitive_root_indices(5) == [1, 2]
    assert primitive_root_indices(12) == [1, 5]


def test_oracle_sees_multiplicity() -> None:
    square = cyclotomic(5) ** 2
    assert root_of_unity_oracle(square, 5, 2)
    assert not root_of_unity_oracle(cyclotomic(5), 5, 2)
    assert root_of_unity_oracle(cyclotomic(5), 5, 1)


def test_oracle_handles_laurent_and_zero() -> None:
    assert root_of_unity_oracle(LaurentPoly.zero(), 7, 3)
    assert root_of_unity_oracle(LaurentPoly.monomial(-4) * (q**6 - 1), 3, 1)
    assert not root_of_unity_oracle(q**2 + 1, 3, 1)
    assert root_of_unity_oracle(q - 1, 1, 1)


def test_oracle_rejects_non_positive_multiplicity() -> None:
    with pytest.raises(ValueError):
        root_of_unity_oracle(q, 3, 0)


@pytest.mark.parametrize(
    ("case_id", "params"),
    [("T1a", {"n": 5}), ("T1b", {"n": 3}), ("T2", {"d": 4, "n": 3}), ("T7", {"d": 3, "n": 4})],
)
def test_sum_oracle_agrees_with_exact_verdict(case_id: str, params: dict[str, int]) -> None:
    instance = get_case(case_id).build(params)
    exact = check_sum_congruence(instance.spec, instance.rhs, instance.modulus)
    numeric = sum_oracle(instance.spec, instance.rhs, instance.modulus)
    assert exact.status is numeric.status is Verdict.HOLDS


def test_sum_oracle_detects_a_wrong_rhs() -> None:
    instance = get_case("T1a").build({"n": 5})
    numeric = sum_oracle(instance.spec, instance.rhs + q, instance.modulus)
    assert numeric.status is Verdict.FAILS


def test_classification_thresholds() -> None:
    assert _classify(mpmath.mpf("1e-40"), 60)
    assert not _classify(mpmath.mpf("1e-3"), 60)
    with pytest.raises(OraclePrecisionError, match="ambiguous"):
        _classify(mpmath.mpf("1e-25"), 60)


ORACLE_CASES = ("T1a", "T1b", "T1a-half", "T1b-half", "T2", "T3", "T4", "T5", "T6", "T7", "ODD1", "ODD2")


@pytest.mark.slow
def test_sum_oracle_agrees_over_the_quick_profile() -> None:
    registry = CaseRegistry()
    points = [point for point in profile_points(Profile.QUICK, registry) if point[0] in ORACLE_CASES]
    assert {case_id for case_id, _ in points} == set(ORACLE_CASES)
    disagreements: list[tuple[str, dict[str, int], Verdict, Verdict]] = []
    for case_id, params in points:
        instance = registry.get(case_id).build(params)
        exact = check_sum_congruence(instance.spec, instance.rhs, instance.modulus)
        numeric = sum_oracle(instance.spec, instance.rhs, instance.modulus)
        if exact.status is not numeric.status:
            disagreements.append((case_id, params, exact.status, numeric.status))
    assert disagreements == []

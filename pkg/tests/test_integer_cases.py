"""Tests for the integer supercongruence families."""

from __future__ import annotations

from fractions import Fraction

import pytest

from qcong.cases.integer import (
    IntegerInstance,
    fifth_power_family,
    first_moment,
    first_moment_refined,
    hypergeometric_terms,
    plain_sum,
    seventh_power_family,
    symmetric_moment,
    two_p_two_k,
    weighted_sum,
)


def test_hypergeometric_terms_are_incremental() -> None:
    assert list(hypergeometric_terms(Fraction(1, 2), 1, 4)) == [1, Fraction(1, 2), Fraction(3, 8), Fraction(5, 16)]
    assert list(hypergeometric_terms(Fraction(1, 2), 2, 2)) == [1, Fraction(1, 4)]
    assert list(hypergeometric_terms(Fraction(1), 3, 0)) == []


def test_weighted_sum() -> None:
    assert weighted_sum(Fraction(1), 1, 4, lambda k: Fraction(1)) == 4
    assert weighted_sum(Fraction(1), 5, 4, Fraction) == 6


def test_first_moment_at_three() -> None:
    instance = first_moment(3)
    assert instance.value == Fraction(2673, 524288)
    assert instance.holds
    assert instance.valuation == 5


def test_refined_first_moment_needs_p_at_least_five() -> None:
    at_three = first_moment_refined(3)
    assert at_three.target == Fraction(-27, 8)
    assert at_three.valuation == 3
    assert not at_three.holds
    assert first_moment_refined(5).holds


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_two_p_two_k(p: int) -> None:
    assert two_p_two_k(p).holds


@pytest.mark.parametrize("p", [3, 5, 7])
def test_plain_sum_modulus_depends_on_p(p: int) -> None:
    instance = plain_sum(p)
    assert instance.power == (3 if p == 3 else 5)
    assert instance.holds


@pytest.mark.parametrize("p", [5, 7, 11])
def test_first_moment_mod_p_cubed(p: int) -> None:
    assert first_moment(p).holds


@pytest.mark.parametrize(("r", "p"), [(1, 5), (1, 7), (2, 7)])
def test_symmetric_moment(r: int, p: int) -> None:
    assert symmetric_moment(r, p).holds


def test_prime_power_families() -> None:
    assert seventh_power_family(5, 1).power == 7
    assert seventh_power_family(5, 1).holds
    assert fifth_power_family(5, 1).power == 5
    assert fifth_power_family(5, 1).holds


def test_instance_reports_exact_valuation() -> None:
    instance = IntegerInstance(Fraction(250, 3), Fraction(0), 5, 4)
    assert instance.valuation == 3
    assert not instance.holds
    assert IntegerInstance(Fraction(7), Fraction(7), 5, 40).holds

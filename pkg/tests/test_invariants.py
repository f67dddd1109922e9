"""Tests for the structural invariants behind the q-congruence families."""

from __future__ import annotations

import pytest

from qcong.cases.invariants import (
    antisymmetry_check,
    central_binomial_check,
    cyclotomic_product_check,
    family_spec,
    lemma_one_check,
    mod_square_grid,
    negative_pochhammer_check,
    negative_pochhammer_half_check,
    ratio_congruence_check,
    truncation_equivalence_check,
)
from qcong.qseries import BracketFactor


def test_family_spec_shape() -> None:
    spec = family_spec(4, 1, 3)
    assert (spec.k_from, spec.k_to) == (0, 2)
    assert spec.bracket == BracketFactor(8, 1, 1)
    assert spec.qpower.exponent(2) == 4
    doubled = family_spec(5, 2, 4, scale=2)
    assert doubled.pochhammers[0].a == 4
    assert doubled.pochhammers[0].d == 10


@pytest.mark.parametrize(("d", "n"), [(4, 3), (4, 7), (5, 4)])
def test_antisymmetry(d: int, n: int) -> None:
    assert antisymmetry_check(d, n)


def test_antisymmetry_rejects_bad_parameters() -> None:
    with pytest.raises(ValueError):
        antisymmetry_check(3, 2)
    with pytest.raises(ValueError):
        antisymmetry_check(4, 4)


@pytest.mark.parametrize(("d", "n"), [(4, 3), (4, 7), (3, 5), (5, 4), (5, 9)])
def test_truncation_equivalence(d: int, n: int) -> None:
    assert truncation_equivalence_check(d, n)


@pytest.mark.parametrize(("d", "n"), [(4, 3), (4, 7), (3, 5), (6, 5)])
def test_ratio_congruence(d: int, n: int) -> None:
    assert ratio_congruence_check(d, n)


@pytest.mark.parametrize(("d", "r", "a"), [(5, 1, 1), (7, 3, 2), (6, 1, 1), (5, -3, 2), (9, 2, 3)])
def test_lemma_one(d: int, r: int, a: int) -> None:
    assert lemma_one_check(d, r, a)


@pytest.mark.parametrize(("d", "r", "a"), [(4, 1, 1), (6, 2, 1), (5, 1, 0), (5, 3, 1)])
def test_lemma_one_rejects_inadmissible_input(d: int, r: int, a: int) -> None:
    with pytest.raises(ValueError):
        lemma_one_check(d, r, a)


def test_mod_square_grid() -> None:
    assert mod_square_grid(1, 3, 7, 4)
    assert mod_square_grid(-1, 1, 5, 3)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 15])
def test_odd_modulus_facts(n: int) -> None:
    assert central_binomial_check(n)
    assert negative_pochhammer_check(n)
    assert negative_pochhammer_half_check(n)


def test_cyclotomic_product() -> None:
    assert all(cyclotomic_product_check(n) for n in range(1, 41))

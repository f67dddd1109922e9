"""Tests for the summation and transformation formula checks."""

from __future__ import annotations

import random

import pytest

from qcong.qpoly import LaurentPoly, TruncatedSeries
from qcong.qseries import VanishingDenominatorError
from qcong.transforms import (
    IDENTITIES,
    SeriesComparison,
    UnknownIdentityError,
    check_6phi5_terminating,
    check_andrews,
    check_rogers_6phi5_series,
    check_watson_8phi7,
    compare_rdid,
    compare_sun_euler,
    get_identity,
    infinite_product_series,
    pochhammer_ratio,
    rogers_spec,
    run_identity,
)

q = LaurentPoly.q()

EXAMPLES = [(entry.id, example) for entry in IDENTITIES.values() for example in entry.examples]


@pytest.mark.parametrize(("identity", "params"), EXAMPLES, ids=[f"{i}-{n}" for n, (i, _) in enumerate(EXAMPLES)])
def test_registered_examples_hold(identity: str, params: dict[str, int | list[int]]) -> None:
    result = run_identity(identity, params, order=30)
    assert result.holds
    assert result.first_mismatch is None


def test_6phi5_trivial_length() -> None:
    assert check_6phi5_terminating(2, 1, 1, 0, 3)


def test_watson_small_instances() -> None:
    assert check_watson_8phi7(1, 1, 1, 1, 1, 0, 2)
    assert check_watson_8phi7(5, 1, 2, 1, 1, 1, 3)


def test_andrews_with_one_pair_is_the_6phi5_shape() -> None:
    assert check_andrews(1, 3, [1], [2], 2, 2)


@pytest.mark.parametrize(
    ("a", "b", "c", "n", "base"),
    [(3, [1, 1], [1, 2], 2, 2), (5, [1, 2], [1, 1], 3, 1)],
)
def test_andrews_two_pairs(a: int, b: list[int], c: list[int], n: int, base: int) -> None:
    assert check_andrews(2, a, b, c, n, base)


def test_6phi5_random_instances() -> None:
    rng = random.Random(20240807)
    for _ in range(10):
        b, c = rng.randint(1, 4), rng.randint(1, 4)
        a, n, base = rng.randint(4, 9), rng.randint(0, 4), rng.randint(1, 3)
        assert check_6phi5_terminating(a, b, c, n, base), (a, b, c, n, base)


def test_watson_random_instances() -> None:
    # a >= d + e keeps every denominator of the balanced side away from 1 - q^0
    rng = random.Random(20240808)
    for _ in range(10):
        b, c, d, e = (rng.randint(1, 3) for _ in range(4))
        a, n, base = rng.randint(6, 9), rng.randint(0, 3), rng.randint(1, 3)
        assert check_watson_8phi7(a, b, c, d, e, n, base), (a, b, c, d, e, n, base)


@pytest.mark.slow
def test_andrews_random_instances() -> None:
    rng = random.Random(20240809)
    for m in (2, 3, 2, 3, 3):
        b = [rng.randint(1, 3) for _ in range(m)]
        c = [rng.randint(1, 3) for _ in range(m)]
        a, n, base = rng.randint(6, 9), rng.randint(1, 3), rng.randint(1, 3)
        assert check_andrews(m, a, b, c, n, base), (m, a, b, c, n, base)


def test_argument_validation() -> None:
    with pytest.raises(ValueError):
        check_6phi5_terminating(1, 1, 1, -1, 2)
    with pytest.raises(ValueError):
        check_watson_8phi7(1, 1, 1, 1, 1, 1, 0)
    with pytest.raises(ValueError):
        check_andrews(0, 1, [], [], 1, 1)
    with pytest.raises(ValueError):
        check_andrews(2, 1, [1], [1, 2], 1, 2)


def test_pochhammer_ratio_reports_vanishing_denominator() -> None:
    assert pochhammer_ratio([2], [1], 1, 1) == 1 + q
    with pytest.raises(VanishingDenominatorError):
        pochhammer_ratio([1], [0], 1, 1)


def test_infinite_product_series() -> None:
    assert infinite_product_series([1], [1], 1, 10) == TruncatedSeries.one(10)
    assert infinite_product_series([0], [1], 1, 6).valuation() == 7
    # (q^-1; q^2)_inf = (1 - q^-1)(q; q^2)_inf
    expected = TruncatedSeries.from_poly(1 - LaurentPoly.monomial(-1), 4) * infinite_product_series([1], [], 2, 4)
    assert infinite_product_series([-1], [], 2, 3) == expected
    with pytest.raises(VanishingDenominatorError):
        infinite_product_series([1], [0], 2, 5)


def test_rogers_needs_a_formal_argument() -> None:
    with pytest.raises(ValueError):
        rogers_spec(1, 2, 2, 2, 1, 10)


@pytest.mark.slow
@pytest.mark.parametrize(("a", "b", "c", "d", "base"), [(1, 1, 1, 1, 4), (5, 1, 2, 1, 3)])
def test_rogers_series_through_order_100(a: int, b: int, c: int, d: int, base: int) -> None:
    assert check_rogers_6phi5_series(a, b, c, d, base, 100)


@pytest.mark.slow
def test_series_identities_through_order_100() -> None:
    assert compare_rdid(1, 100).holds
    assert compare_rdid(-1, 100).holds
    assert compare_sun_euler(100).holds


def test_rdid_rejects_large_r() -> None:
    with pytest.raises(ValueError):
        compare_rdid(3, 10)
    with pytest.raises(ValueError):
        compare_rdid(0, 10)


def test_series_comparison_reports_first_mismatch() -> None:
    comparison = SeriesComparison(
        TruncatedSeries.from_poly(1 + q + q**4, 6), TruncatedSeries.from_poly(1 + q + 2 * q**4, 6)
    )
    assert not comparison.holds
    assert comparison.first_mismatch == 4


def test_run_identity_fills_defaults() -> None:
    result = run_identity("rdid", order=20)
    assert result.params == {"r": 1}
    assert result.order == 20
    assert result.holds
    assert run_identity("6phi5-term").order is None


def test_run_identity_errors() -> None:
    with pytest.raises(UnknownIdentityError):
        get_identity("nope")
    with pytest.raises(KeyError):
        run_identity("nope")
    with pytest.raises(ValueError):
        run_identity("rdid", {"r": 3})
    with pytest.raises(ValueError):
        run_identity("rdid", {"s": 1})
    with pytest.raises(ValueError):
        run_identity("sun-euler", order=0)

"""Tests for summand descriptions, exact sums and series expansion."""

from __future__ import annotations

from fractions import Fraction

import pytest

from qcong.qpoly import LaurentPoly, RationalFunction, TruncatedSeries, infinite_pochhammer_series, series_of
from qcong.qseries import (
    BracketFactor,
    NonIntegralExponentError,
    QPochhammerFactor,
    QPowerFactor,
    TruncatedSumSpec,
    VanishingDenominatorError,
    gaussian_binomial,
    hypergeometric_phi,
    iterate_terms,
    pochhammer,
    q_integer,
    series_sum,
    sum_over_common_denominator,
    term,
)

q = LaurentPoly.q()
ONE = LaurentPoly.one()


def _geometric(k_to: int) -> TruncatedSumSpec:
    return TruncatedSumSpec(qpower=QPowerFactor(beta=1), k_from=0, k_to=k_to)


def test_q_integer_values() -> None:
    assert q_integer(3) == 1 + q + q**2
    assert q_integer(3, 2) == 1 + q**2 + q**4
    assert q_integer(1) == ONE
    assert q_integer(0).is_zero()
    assert q_integer(-2) == -LaurentPoly.monomial(-2) - LaurentPoly.monomial(-1)


def test_q_integer_at_one_is_the_integer() -> None:
    for m in range(-6, 7):
        assert q_integer(m).evaluate(Fraction(1)) == m


def test_q_integer_rejects_bad_base() -> None:
    with pytest.raises(ValueError):
        q_integer(3, 0)


def test_pochhammer_products() -> None:
    assert pochhammer(1, 1, 3) == (1 - q) * (1 - q**2) * (1 - q**3)
    assert pochhammer(5, 2, 0) == ONE
    assert pochhammer(1, 2, 2, negated=True) == (1 + q) * (1 + q**3)
    assert pochhammer(-2, 1, 3).is_zero()
    with pytest.raises(ValueError):
        pochhammer(1, 1, -1)
    with pytest.raises(ValueError):
        pochhammer(1, 0, 2)


def test_gaussian_binomial() -> None:
    assert gaussian_binomial(4, 2) == LaurentPoly.from_dense([1, 1, 2, 1, 1])
    assert gaussian_binomial(5, 0) == ONE
    assert gaussian_binomial(3, 5).is_zero()
    assert gaussian_binomial(6, 3).evaluate(1) == 20


def test_factor_validation() -> None:
    with pytest.raises(ValueError):
        QPochhammerFactor(1, 0)
    with pytest.raises(ValueError):
        QPochhammerFactor(1, 1, exponent=0)
    with pytest.raises(ValueError):
        BracketFactor(1, 1, s=0)
    with pytest.raises(ValueError):
        QPowerFactor(sign=2)


def test_summation_range_validation() -> None:
    with pytest.raises(ValueError):
        TruncatedSumSpec(k_from=3, k_to=2)
    with pytest.raises(ValueError):
        TruncatedSumSpec(k_from=-1, k_to=2)


def test_qpower_integrality() -> None:
    triangular = QPowerFactor(alpha=Fraction(1, 2), beta=Fraction(1, 2))
    assert triangular.integral_everywhere()
    assert [triangular.exponent(k) for k in range(5)] == [0, 1, 3, 6, 10]
    half = QPowerFactor(alpha=Fraction(1, 2))
    assert not half.integral_everywhere()
    with pytest.raises(NonIntegralExponentError):
        half.exponent(1)


def test_geometric_sum_and_terms() -> None:
    spec = _geometric(4)
    assert sum_over_common_denominator(spec) == LaurentPoly.from_dense([1] * 5)
    assert term(spec, 2) == q**2
    with pytest.raises(ValueError):
        term(spec, 5)


def test_alternating_sign() -> None:
    spec = TruncatedSumSpec(qpower=QPowerFactor(sign=-1), k_from=0, k_to=3)
    assert sum_over_common_denominator(spec).is_zero()


def test_partial_range_starts_at_k_from() -> None:
    spec = TruncatedSumSpec(qpower=QPowerFactor(beta=1), k_from=2, k_to=4)
    assert sum_over_common_denominator(spec) == q**2 + q**3 + q**4


def test_term_with_bracket_and_pochhammers() -> None:
    spec = TruncatedSumSpec(
        pochhammers=(QPochhammerFactor(1, 2, 2), QPochhammerFactor(2, 2, -2)),
        qpower=QPowerFactor(beta=-1),
        k_from=0,
        k_to=3,
        bracket=BracketFactor(4, 1),
    )
    expected = RationalFunction(q_integer(5) * (1 - q) ** 2 * LaurentPoly.monomial(-1), (1 - q**2) ** 2)
    assert term(spec, 1) == expected


def test_terms_add_up_to_the_folded_sum() -> None:
    spec = TruncatedSumSpec(
        pochhammers=(QPochhammerFactor(1, 4, 4), QPochhammerFactor(4, 4, -4)),
        qpower=QPowerFactor(beta=2),
        k_from=0,
        k_to=4,
        bracket=BracketFactor(8, 1),
    )
    total = RationalFunction(LaurentPoly.zero(), ONE)
    for k in range(5):
        total = total + term(spec, k)
    assert sum_over_common_denominator(spec) == total


def test_negative_bracket_argument() -> None:
    spec = TruncatedSumSpec(k_from=0, k_to=0, bracket=BracketFactor(1, -3))
    assert sum_over_common_denominator(spec) == q_integer(-3)


def test_zero_bracket_makes_summand_vanish() -> None:
    spec = TruncatedSumSpec(k_from=0, k_to=2, bracket=BracketFactor(1, -1))
    assert sum_over_common_denominator(spec) == q_integer(-1) + q_integer(1)


def test_numerator_zero_factor_stops_the_walk() -> None:
    spec = TruncatedSumSpec(pochhammers=(QPochhammerFactor(-2, 1, 1),), k_from=0, k_to=5)
    assert [step.k for step in iterate_terms(spec)] == [0, 1, 2]


def test_vanishing_denominator_is_reported() -> None:
    spec = TruncatedSumSpec(pochhammers=(QPochhammerFactor(-1, 1, -1),), k_from=0, k_to=2)
    with pytest.raises(VanishingDenominatorError):
        sum_over_common_denominator(spec)


def test_negated_zero_factor_contributes_two() -> None:
    spec = TruncatedSumSpec(pochhammers=(QPochhammerFactor(0, 1, 1, negated=True),), k_from=1, k_to=1)
    assert sum_over_common_denominator(spec) == LaurentPoly.constant(2)


def test_q_binomial_theorem_terminates_at_zero() -> None:
    spec = TruncatedSumSpec(
        pochhammers=(QPochhammerFactor(-3, 1, 1), QPochhammerFactor(1, 1, -1)),
        qpower=QPowerFactor(beta=1),
        k_from=0,
        k_to=3,
    )
    assert sum_over_common_denominator(spec).is_zero()


@pytest.mark.parametrize(("n", "b", "c"), [(3, 2, 5), (2, 1, 4), (4, 3, 2)])
def test_q_chu_vandermonde(n: int, b: int, c: int) -> None:
    lhs = hypergeometric_phi([-n, b], [c], 1, 1, n + 1)
    rhs = RationalFunction(pochhammer(c - b, 1, n).shift(b * n), pochhammer(c, 1, n))
    assert lhs == rhs


def test_hypergeometric_phi_needs_a_term() -> None:
    with pytest.raises(ValueError):
        hypergeometric_phi([1], [2], 1, 1, 0)


def test_series_sum_geometric() -> None:
    assert series_sum(_geometric(1000), 10) == series_of(RationalFunction(ONE, 1 - q), 10)


def test_series_sum_euler_partition_generating_function() -> None:
    spec = TruncatedSumSpec(
        pochhammers=(QPochhammerFactor(1, 1, -1),), qpower=QPowerFactor(beta=1), k_from=0, k_to=500
    )
    expected = TruncatedSeries.one(20) / infinite_pochhammer_series(1, 1, 20)
    result = series_sum(spec, 20)
    assert result == expected
    assert [result.coefficient(e) for e in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_series_sum_rejects_non_formal_sums() -> None:
    with pytest.raises(ValueError):
        series_sum(TruncatedSumSpec(k_from=0, k_to=10), 5)
    with pytest.raises(ValueError):
        series_sum(_geometric(10), -1)

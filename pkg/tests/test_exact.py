"""Tests for exact arithmetic helpers."""

from __future__ import annotations

import pickle
from fractions import Fraction

import pytest

from qcong.exact import (
    INFINITY,
    NotPrimeError,
    as_rational,
    congruent_mod_prime_power,
    is_prime,
    padic_valuation,
    primes_between,
    require_prime,
    rising_factorial,
)


def test_as_rational_collapses_integral_fractions() -> None:
    assert as_rational(Fraction(6, 3)) == 2
    assert isinstance(as_rational(Fraction(6, 3)), int)
    assert as_rational("-27/8") == Fraction(-27, 8)
    assert as_rational(" 4 ") == 4


def test_as_rational_rejects_booleans_and_floats() -> None:
    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(TypeError):
        as_rational(0.5)  # type: ignore[arg-type]


def test_is_prime_small_values() -> None:
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(91)
    assert is_prime(97)
    assert not is_prime(-7)


def test_primes_between_is_inclusive() -> None:
    assert primes_between(5, 13) == [5, 7, 11, 13]
    assert primes_between(-10, 3) == [2, 3]
    assert primes_between(14, 16) == []


def test_require_prime_raises_value_error_subclass() -> None:
    require_prime(11)
    with pytest.raises(NotPrimeError):
        require_prime(4)
    with pytest.raises(ValueError):
        require_prime(1)


def test_padic_valuation_of_rationals() -> None:
    assert padic_valuation(Fraction(2673, 524288), 3) == 5
    assert padic_valuation(Fraction(2673, 524288), 2) == -19
    assert padic_valuation(Fraction(1, 9), 3) == -2
    assert padic_valuation(-50, 5) == 2
    assert padic_valuation(7, 5) == 0


def test_padic_valuation_of_zero_is_infinite() -> None:
    assert padic_valuation(0, 7) is INFINITY
    assert padic_valuation(Fraction(0), 7) == INFINITY


def test_padic_valuation_requires_prime() -> None:
    with pytest.raises(NotPrimeError):
        padic_valuation(12, 6)


def test_infinity_orders_above_every_integer() -> None:
    assert INFINITY > 10**100
    assert not INFINITY < 0
    assert INFINITY >= 3
    assert 3 < INFINITY
    assert INFINITY + 5 is INFINITY
    assert str(INFINITY) == "inf"
    assert max(4, INFINITY) is INFINITY


def test_infinity_survives_pickling() -> None:
    assert pickle.loads(pickle.dumps(INFINITY)) is INFINITY


def test_congruent_mod_prime_power() -> None:
    assert congruent_mod_prime_power(10, 1, 3, 2)
    assert not congruent_mod_prime_power(10, 1, 3, 3)
    assert congruent_mod_prime_power(Fraction(1, 2), Fraction(1, 2), 5, 40)
    # 1/2 - 13 = -25/2
    assert congruent_mod_prime_power(Fraction(1, 2), 13, 5, 2)


def test_congruent_mod_prime_power_rejects_bad_exponent() -> None:
    with pytest.raises(ValueError):
        congruent_mod_prime_power(1, 1, 3, 0)


def test_rising_factorial() -> None:
    assert rising_factorial(Fraction(1, 2), 3) == Fraction(15, 8)
    assert rising_factorial(5, 0) == 1
    assert rising_factorial(1, 5) == 120
    assert rising_factorial(-2, 3) == 0
    with pytest.raises(ValueError):
        rising_factorial(1, -1)

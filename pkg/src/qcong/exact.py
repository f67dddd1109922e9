"""Exact integer and rational arithmetic helpers and p-adic valuations."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from math import isqrt

Coefficient = int | Fraction
"""Exact coefficient type: Python ints are the integral rationals."""


class NotPrimeError(ValueError):
    """Raised when an operation requires a prime and receives something else."""


@total_ordering
class PositiveInfinity:
    """Valuation of zero; compares above every integer."""

    _instance: PositiveInfinity | None = None

    def __new__(cls) -> PositiveInfinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PositiveInfinity)

    def __lt__(self, other: object) -> bool:
        if isinstance(other, PositiveInfinity | int):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if isinstance(other, int):
            return True
        if isinstance(other, PositiveInfinity):
            return False
        return NotImplemented

    def __add__(self, other: object) -> PositiveInfinity:
        if isinstance(other, PositiveInfinity | int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __hash__(self) -> int:
        return hash("qcong.infinity")

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self) -> str:
        return "INFINITY"


INFINITY = PositiveInfinity()

Valuation = int | PositiveInfinity


def as_rational(value: Coefficient | str) -> Coefficient:
    """Normalizes a coefficient, collapsing integral fractions to int.

    Args:
      value: An int, Fraction or a string such as "-27/8".

    Returns:
      An int when the value is integral, otherwise a reduced Fraction.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return value
    raise TypeError(f"unsupported coefficient type: {type(value).__name__}")


@lru_cache(maxsize=4096)
def is_prime(p: int) -> bool:
    """Deterministic primality test by trial division."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for divisor in range(3, isqrt(p) + 1, 2):
        if p % divisor == 0:
            return False
    return True


def require_prime(p: int) -> None:
    """Raises NotPrimeError unless p is prime."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"{p!r} is not a prime")


def primes_between(low: int, high: int) -> list[int]:
    """Returns the primes p with low <= p <= high."""
    return [p for p in range(max(low, 2), high + 1) if is_prime(p)]


def _integer_valuation(value: int, p: int) -> int:
    count = 0
    while value % p == 0:
        value //= p
        count += 1
    return count


def padic_valuation(x: Coefficient, p: int) -> Valuation:
    """Returns v_p(x) for a rational x.

    Args:
      x: The rational number.
      p: A prime.

    Returns:
      v_p(numerator) - v_p(denominator), or INFINITY when x is zero.

    Raises:
      NotPrimeError: If p is not prime.
    """
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return _integer_valuation(abs(x.numerator), p) - _integer_valuation(x.denominator, p)


def congruent_mod_prime_power(x: Coefficient, y: Coefficient, p: int, k: int) -> bool:
    """Decides x ≡ y (mod p^k) for rationals x and y.

    Raises:
      NotPrimeError: If p is not prime.
      ValueError: If k < 1.
    """
    require_prime(p)
    if k < 1:
        raise ValueError("the exponent k must be positive")
    return padic_valuation(Fraction(x) - Fraction(y), p) >= k


def rising_factorial(a: Coefficient, k: int) -> Fraction:
    """Returns the Pochhammer symbol (a)_k = a(a+1)...(a+k-1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    result = Fraction(1)
    a = Fraction(a)
    for j in range(k):
        result *= a + j
    return result

"""Truncated ordinary hypergeometric sums with rational terms.

Every integer congruence here sums T_k = ((a)_k / k!)^E times a polynomial
weight in k. Terms are built incrementally from T_{k+1} = T_k ((a + k)/(k + 1))^E
so no factorial is ever recomputed.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction

from qcong.exact import Valuation, congruent_mod_prime_power, padic_valuation

Weight = Callable[[int], Fraction]


@dataclass(frozen=True)
class IntegerInstance:
    """The claim ``value == target (mod p^power)``."""

    value: Fraction
    target: Fraction
    p: int
    power: int

    @property
    def holds(self) -> bool:
        return congruent_mod_prime_power(self.value, self.target, self.p, self.power)

    @property
    def valuation(self) -> Valuation:
        """v_p(value - target)."""
        return padic_valuation(self.value - self.target, self.p)


def hypergeometric_terms(a: Fraction, exponent: int, count: int) -> Iterator[Fraction]:
    """Yields ((a)_k / k!)^exponent for k = 0..count-1."""
    ratio_base = Fraction(1)
    for k in range(count):
        yield ratio_base**exponent
        ratio_base *= (a + k) / (k + 1)


def weighted_sum(a: Fraction, exponent: int, count: int, weight: Weight) -> Fraction:
    """Returns sum_{k < count} weight(k) * ((a)_k / k!)^exponent."""
    return sum(
        (weight(k) * t for k, t in enumerate(hypergeometric_terms(a, exponent, count))),
        Fraction(0),
    )


def two_p_two_k(p: int, printed: bool = False) -> IntegerInstance:
    """(2pk + 2k + 1) weights with a = 1/(p+1), E = p + 1, modulo p^3.

    ``printed`` switches to the (2p + 2k + 1) weight.
    """
    a = Fraction(1, p + 1)
    if printed:
        value = weighted_sum(a, p + 1, p, lambda k: Fraction(2 * p + 2 * k + 1))
    else:
        value = weighted_sum(a, p + 1, p, lambda k: Fraction(2 * p * k + 2 * k + 1))
    return IntegerInstance(value, Fraction(0), p, 3)


def plain_sum(p: int) -> IntegerInstance:
    """sum T_k with a = 1/(p+1), E = p + 1; modulo p^5, or 3^3 when p = 3."""
    value = weighted_sum(Fraction(1, p + 1), p + 1, p, lambda k: Fraction(1))
    return IntegerInstance(value, Fraction(0), p, 5 if p > 3 else 3)


def first_moment(p: int, power: int = 3, target: Fraction = Fraction(0)) -> IntegerInstance:
    """sum k T_k with a = 1/(p+1), E = p + 1."""
    value = weighted_sum(Fraction(1, p + 1), p + 1, p, Fraction)
    return IntegerInstance(value, target, p, power)


def first_moment_refined(p: int) -> IntegerInstance:
    """sum k T_k == p^3/4 - p^4/8 (mod p^5)."""
    target = Fraction(p**3, 4) - Fraction(p**4, 8)
    return first_moment(p, 5, target)


def symmetric_moment(r: int, p: int) -> IntegerInstance:
    """sum k^r (k + 1/(p+1))^r T_k == 0 (mod p^4)."""
    shift = Fraction(1, p + 1)
    value = weighted_sum(shift, p + 1, p, lambda k: (k * (k + shift)) ** r)
    return IntegerInstance(value, Fraction(0), p, 4)


def seventh_power_family(p: int, r: int) -> IntegerInstance:
    """The p^r-term sum with a = (p^r - 1)/(p^(r+1) - 1) modulo p^(2r+5)."""
    upper = p ** (r + 1) - 1
    lower = p**r - 1
    exponent = 2 * upper // (p - 1)
    value = weighted_sum(Fraction(lower, upper), exponent, p**r, lambda k: Fraction(2 * k * upper, lower) + 1)
    return IntegerInstance(value, Fraction(0), p, 2 * r + 5)


def fifth_power_family(p: int, r: int) -> IntegerInstance:
    """The p^r-term sum with a = -1/(p^r - 1) and weight 2k p^r - 2k - 1, modulo p^(2r+3)."""
    pr = p**r
    value = weighted_sum(Fraction(-1, pr - 1), 2 * pr - 2, pr, lambda k: Fraction(2 * k * pr - 2 * k - 1))
    return IntegerInstance(value, Fraction(0), p, 2 * r + 3)

"""Structural facts behind the theorem families, checked exactly.

These back the registry's ``invariant`` cases and double as property suites.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd

from qcong.congruence import (
    ModulusSpec,
    check_congruence,
    mod_square_property,
    residue_terms,
)
from qcong.qpoly import LaurentPoly, RationalFunction, cyclotomic
from qcong.qseries import (
    BracketFactor,
    QPochhammerFactor,
    QPowerFactor,
    TruncatedSumSpec,
    gaussian_binomial,
    pochhammer,
)

logger = logging.getLogger(__name__)


def family_spec(d: int, r: int, count: int, scale: int = 1) -> TruncatedSumSpec:
    """sum_{k < count} [2dk + r]_{q^s} (q^(sr); q^(sd))_k^d / (q^(sd); q^(sd))_k^d q^(s d (d - r - 2) k / 2).

    With s = 1 and r = 1 or r = -1 this is the sum of the d-families with
    n == -1 or n == 1 (mod d); s = 2 gives the odd-d variant in base q^2.
    """
    return TruncatedSumSpec(
        pochhammers=(
            QPochhammerFactor(scale * r, scale * d, d),
            QPochhammerFactor(scale * d, scale * d, -d),
        ),
        qpower=QPowerFactor(beta=Fraction(scale * d * (d - r - 2), 2)),
        k_from=0,
        k_to=count - 1,
        bracket=BracketFactor(2 * d, r, scale),
    )


def _halfway(d: int, n: int) -> int:
    if d < 2 or (n + 1) % d:
        raise ValueError(f"need n == -1 (mod d), got d={d}, n={n}")
    return (d * n - n - 1) // d


def antisymmetry_check(d: int, n: int) -> bool:
    """term_k + term_(K-k) == 0 (mod Phi_(dn-n)) for 0 <= k <= K = (dn-n-1)/d.

    Raises:
      ValueError: If n is not == -1 (mod d) or d < 4.
    """
    if d < 4:
        raise ValueError(f"antisymmetry needs d >= 4, got d={d}")
    half = _halfway(d, n)
    m = d * n - n
    ring, terms = residue_terms(family_spec(d, 1, half + 1), m)
    for k in range(half + 1):
        (left, left_den), (right, right_den) = terms[k], terms[half - k]
        if not any(left_den) or not any(right_den):
            logger.debug("d=%d n=%d: denominator of term %d meets Phi_%d", d, n, k, m)
            return False
        cross = ring.add(ring.mul(left, right_den), ring.mul(right, left_den))
        if any(cross):
            logger.debug("d=%d n=%d: terms %d and %d do not cancel", d, n, k, half - k)
            return False
    return True


def truncation_equivalence_check(d: int, n: int) -> bool:
    """Every term with K < k <= n - 1 is individually == 0 (mod Phi_(dn-n)).

    A term qualifies when its numerator vanishes modulo Phi_(dn-n) and its
    denominator does not.
    """
    half = _halfway(d, n)
    if half + 1 > n - 1:
        return True
    m = d * n - n
    spec = family_spec(d, 1, n).with_range(half + 1, n - 1)
    ring, terms = residue_terms(spec, m)
    for offset, (numerator, denominator) in enumerate(terms):
        if any(numerator) or not any(denominator):
            logger.debug("d=%d n=%d: term %d survives modulo Phi_%d", d, n, half + 1 + offset, m)
            return False
    return True


def ratio_congruence_check(d: int, n: int) -> bool:
    """(q; q^d)_K / (q^d; q^d)_K == (-1)^K q^((d-1)(n-1)K/2) (mod Phi_(dn-n))."""
    half = _halfway(d, n)
    ratio = RationalFunction(pochhammer(1, d, half), pochhammer(d, d, half))
    exponent = (d - 1) * (n - 1) * half
    if exponent % 2:
        return False
    rhs = LaurentPoly.monomial(exponent // 2, (-1) ** half)
    return check_congruence(ratio, rhs, ModulusSpec.phi((d * n - n, 1))).holds


def lemma_one_check(d: int, r: int, a: int) -> bool:
    """The least k > 0 with n | 2r + kd satisfies k >= a(d - 4)/2, where n = ad - r.

    Holds vacuously when no such k exists below n*d.

    Raises:
      ValueError: If the parameters violate d >= 5, gcd(d, r) = 1, a >= 1, n >= r.
    """
    n = a * d - r
    if d < 5 or gcd(d, r) != 1 or a < 1 or n < r or n < 1:
        raise ValueError(f"need d >= 5, gcd(d, r) = 1, a >= 1 and ad - r >= r; got d={d}, r={r}, a={a}")
    for k in range(1, n * d):
        if (2 * r + k * d) % n == 0:
            return 2 * k >= a * (d - 4)
    return True


def mod_square_grid(r: int, alpha: int, n: int, d: int) -> bool:
    """mod_square_property for every 0 <= k <= n - 1."""
    return all(mod_square_property(r, alpha, n, d, k) for k in range(n))


def _congruent_to(value: LaurentPoly | RationalFunction, rhs: LaurentPoly, n: int) -> bool:
    lhs = value if isinstance(value, RationalFunction) else RationalFunction.from_poly(value)
    return check_congruence(lhs, rhs, ModulusSpec.phi((n, 1))).holds


def central_binomial_check(n: int) -> bool:
    """[2n-1 choose n-1] == 1 (mod Phi_n) for odd n."""
    return _congruent_to(gaussian_binomial(2 * n - 1, n - 1), LaurentPoly.one(), n)


def negative_pochhammer_check(n: int) -> bool:
    """(-q; q)_(n-1) == 1 (mod Phi_n) for odd n."""
    return _congruent_to(pochhammer(1, 1, n - 1, negated=True), LaurentPoly.one(), n)


def negative_pochhammer_half_check(n: int) -> bool:
    """(-q; q)_((n-1)/2)^2 == q^((n^2-1)/8) (mod Phi_n) for odd n."""
    square = pochhammer(1, 1, (n - 1) // 2, negated=True) ** 2
    return _congruent_to(square, LaurentPoly.monomial((n * n - 1) // 8), n)


def cyclotomic_product_check(n: int) -> bool:
    """prod_{m | n} Phi_m = q^n - 1."""
    product = LaurentPoly.one()
    for m in range(1, n + 1):
        if n % m == 0:
            product = product * cyclotomic(m)
    return product == LaurentPoly.monomial(n) - 1

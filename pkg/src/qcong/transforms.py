"""Exact checks of the summation and transformation formulas behind the congruences.

All parameters are exponents: with base p = q^base, the parameter written ``a``
stands for q^a. Terminating identities are compared as rational functions and
nonterminating ones as truncated series. Square roots of a never appear: the
well-poised pair is expressed through (a p^2; p^2)_k / (a; p^2)_k.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from qcong.qpoly import LaurentPoly, RationalFunction, TruncatedSeries
from qcong.qseries import (
    BracketFactor,
    QPochhammerFactor,
    QPowerFactor,
    TruncatedSumSpec,
    VanishingDenominatorError,
    hypergeometric_phi,
    hypergeometric_spec,
    pochhammer,
    q_integer,
    series_sum,
)

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 100


class UnknownIdentityError(KeyError):
    """No identity is registered under the requested id."""


def _product(exponents: Sequence[int], base: int, n: int) -> LaurentPoly:
    result = LaurentPoly.one()
    for x in exponents:
        result = result * pochhammer(x, base, n)
    return result


def pochhammer_ratio(numerator: Sequence[int], denominator: Sequence[int], base: int, n: int) -> RationalFunction:
    """(q^x1, q^x2, ...; p)_n / (q^y1, ...; p)_n as an exact rational function.

    Raises:
      VanishingDenominatorError: If a denominator Pochhammer is zero.
    """
    bottom = _product(denominator, base, n)
    if bottom.is_zero():
        raise VanishingDenominatorError(f"denominator (q^{list(denominator)}; q^{base})_{n} vanishes")
    return RationalFunction(_product(numerator, base, n), bottom)


def six_phi_five_lhs(a: int, b: int, c: int, n: int, base: int) -> RationalFunction:
    """Terminating very-well-poised 6phi5 with parameters b, c, p^-n."""
    return hypergeometric_phi(
        [a, b, c, -n * base],
        [a + base - b, a + base - c, a + base * (n + 1)],
        base,
        a + base * (n + 1) - b - c,
        n + 1,
        well_poised=a,
    )


def check_6phi5_terminating(a: int, b: int, c: int, n: int, base: int) -> bool:
    """Terminating 6phi5 sum against (ap, ap/bc; p)_n / (ap/b, ap/c; p)_n.

    Raises:
      VanishingDenominatorError: If either side has a vanishing denominator.
      ValueError: If n < 0 or base < 1.
    """
    if n < 0 or base < 1:
        raise ValueError("need n >= 0 and base >= 1")
    lhs = six_phi_five_lhs(a, b, c, n, base)
    rhs = pochhammer_ratio([a + base, a + base - b - c], [a + base - b, a + base - c], base, n)
    return lhs == rhs


def check_watson_8phi7(a: int, b: int, c: int, d: int, e: int, n: int, base: int) -> bool:
    """Watson's transformation of a terminating 8phi7 into a balanced 4phi3.

    Raises:
      VanishingDenominatorError: If either side has a vanishing denominator.
    """
    if n < 0 or base < 1:
        raise ValueError("need n >= 0 and base >= 1")
    shifted = a + base
    lhs = hypergeometric_phi(
        [a, b, c, d, e, -n * base],
        [shifted - b, shifted - c, shifted - d, shifted - e, a + base * (n + 1)],
        base,
        2 * a + base * (n + 2) - b - c - d - e,
        n + 1,
        well_poised=a,
    )
    prefactor = pochhammer_ratio([shifted, shifted - d - e], [shifted - d, shifted - e], base, n)
    balanced = hypergeometric_phi(
        [shifted - b - c, d, e, -n * base],
        [shifted - b, shifted - c, d + e - n * base - a],
        base,
        base,
        n + 1,
    )
    return lhs == prefactor * balanced


def _compositions(parts: int, total: int) -> Iterator[tuple[int, ...]]:
    """Tuples of ``parts`` non-negative integers with sum at most ``total``."""
    if parts == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(parts - 1, total - first):
            yield (first, *rest)


def andrews_multisum(
    m: int, a: int, b_list: Sequence[int], c_list: Sequence[int], n: int, base: int
) -> RationalFunction:
    """Right side of Andrews' multiseries extension of Watson's transformation."""
    shifted = a + base
    bm, cm = b_list[m - 1], c_list[m - 1]
    total = RationalFunction(LaurentPoly.zero(), LaurentPoly.one())
    for ls in _compositions(m - 1, n):
        partial = [sum(ls[: i + 1]) for i in range(m - 1)]
        top = LaurentPoly.one()
        bottom = LaurentPoly.one()
        for i in range(m - 1):
            top = top * pochhammer(shifted - b_list[i] - c_list[i], base, ls[i])
            bottom = bottom * pochhammer(base, base, ls[i])
            top = top * pochhammer(b_list[i + 1], base, partial[i]) * pochhammer(c_list[i + 1], base, partial[i])
            bottom = bottom * pochhammer(shifted - b_list[i], base, partial[i])
            bottom = bottom * pochhammer(shifted - c_list[i], base, partial[i])
        last = partial[-1] if partial else 0
        top = top * pochhammer(-n * base, base, last)
        bottom = bottom * pochhammer(bm + cm - n * base - a, base, last)
        exponent = shifted * sum(partial[: m - 2]) + base * last
        exponent -= sum((b_list[i] + c_list[i]) * partial[i - 1] for i in range(1, m - 1))
        if bottom.is_zero():
            raise VanishingDenominatorError(f"multisum denominator vanishes at l={ls}")
        total = total + RationalFunction(top.shift(exponent), bottom)
    return pochhammer_ratio([shifted, shifted - bm - cm], [shifted - bm, shifted - cm], base, n) * total


def andrews_lhs(m: int, a: int, b_list: Sequence[int], c_list: Sequence[int], n: int, base: int) -> RationalFunction:
    params = [x for pair in zip(b_list, c_list, strict=True) for x in pair]
    return hypergeometric_phi(
        [a, *params, -n * base],
        [a + base - x for x in params] + [a + base * (n + 1)],
        base,
        m * a + base * (m + n) - sum(params),
        n + 1,
        well_poised=a,
    )


def check_andrews(m: int, a: int, b_list: Sequence[int], c_list: Sequence[int], n: int, base: int) -> bool:
    """Single very-well-poised sum against Andrews' (m-1)-fold multisum.

    Raises:
      ValueError: If m < 1, n < 0 or the parameter lists do not have length m.
      VanishingDenominatorError: If either side has a vanishing denominator.
    """
    if m < 1 or n < 0 or base < 1:
        raise ValueError("need m >= 1, N >= 0 and base >= 1")
    if len(b_list) != m or len(c_list) != m:
        raise ValueError(f"expected {m} values for b and c, got {len(b_list)} and {len(c_list)}")
    return andrews_lhs(m, a, b_list, c_list, n, base) == andrews_multisum(m, a, b_list, c_list, n, base)


def infinite_product_series(
    numerator: Sequence[int], denominator: Sequence[int], base: int, order: int
) -> TruncatedSeries:
    """(q^x1, ...; p)_inf / (q^y1, ...; p)_inf through q^order.

    Factors 1 - q^t with t < 0 are rewritten as -q^t (1 - q^-t), so arguments
    with non-positive exponents give Laurent series.

    Raises:
      VanishingDenominatorError: If a denominator contains the factor 1 - q^0.
    """
    sign = 1
    shift = 0
    leading: list[tuple[int, bool]] = []
    starts: list[tuple[int, bool]] = []
    for x, upper in [(x, True) for x in numerator] + [(y, False) for y in denominator]:
        t = x
        while t <= 0:
            if t == 0:
                if upper:
                    return TruncatedSeries.build(order + 1, [], order)
                raise VanishingDenominatorError(f"(q^{x}; q^{base})_inf has the factor 1 - q^0")
            sign = -sign
            shift += t if upper else -t
            leading.append((-t, upper))
            t += base
        starts.append((t, upper))
    width = order - shift
    if width < 0:
        return TruncatedSeries.build(order + 1, [], order)
    core = TruncatedSeries.one(width)
    for t, upper in leading:
        core = core.mul_binomial(t) if upper else core.div_binomial(t)
    for t, upper in starts:
        while t <= width:
            core = core.mul_binomial(t) if upper else core.div_binomial(t)
            t += base
    return core.shift(shift).scale(sign)


def rogers_spec(a: int, b: int, c: int, d: int, base: int, order: int) -> TruncatedSumSpec:
    z = a + base - b - c - d
    if z < 1:
        raise ValueError(f"argument exponent a + base - b - c - d = {z} must be at least 1 for a formal series")
    return hypergeometric_spec(
        [a, b, c, d],
        [a + base - b, a + base - c, a + base - d],
        base,
        z,
        _term_cap(order),
        well_poised=a,
    )


def _term_cap(order: int) -> int:
    return 8 * (order + 16)


@dataclass(frozen=True)
class SeriesComparison:
    """Outcome of comparing two truncated series."""

    lhs: TruncatedSeries
    rhs: TruncatedSeries

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def first_mismatch(self) -> int | None:
        difference = (self.lhs - self.rhs).normalized()
        return difference.offset if difference.coefficients else None


def compare_rogers_6phi5(a: int, b: int, c: int, d: int, base: int, order: int = DEFAULT_ORDER) -> SeriesComparison:
    shifted = a + base
    lhs = series_sum(rogers_spec(a, b, c, d, base, order), order)
    rhs = infinite_product_series(
        [shifted, shifted - b - c, shifted - b - d, shifted - c - d],
        [shifted - b, shifted - c, shifted - d, shifted - b - c - d],
        base,
        order,
    )
    return SeriesComparison(lhs, rhs)


def check_rogers_6phi5_series(a: int, b: int, c: int, d: int, base: int, order: int = DEFAULT_ORDER) -> bool:
    """Rogers' nonterminating 6phi5 sum against its product side through q^order.

    Raises:
      ValueError: If the argument exponent a + base - b - c - d is below 1.
    """
    return compare_rogers_6phi5(a, b, c, d, base, order).holds


def rdid_spec(r: int, order: int) -> TruncatedSumSpec:
    """sum_k [8k + r] (q^r; q^4)_k^4 / (q^4; q^4)_k^4 q^((4 - 2r)k)."""
    return TruncatedSumSpec(
        pochhammers=(QPochhammerFactor(r, 4, 4), QPochhammerFactor(4, 4, -4)),
        qpower=QPowerFactor(beta=Fraction(4 - 2 * r)),
        k_from=0,
        k_to=_term_cap(order),
        bracket=BracketFactor(8, r, 1),
    )


def compare_rdid(r: int, order: int = DEFAULT_ORDER) -> SeriesComparison:
    """The q^4, a = b = c = d = q^r case of Rogers' sum, multiplied by [r].

    Raises:
      ValueError: Unless r < 2 and r != 0.
    """
    if r >= 2 or r == 0:
        raise ValueError(f"rdid needs r < 2 and r != 0, got r={r}")
    lhs = series_sum(rdid_spec(r, order), order)
    extended = order + 2 * r * r + 16
    bracket = TruncatedSeries.from_poly(q_integer(r), extended)
    product = infinite_product_series([4 + r, 4 - r, 4 - r, 4 - r], [4, 4, 4, 4 - 2 * r], 4, extended)
    rhs = (bracket * product).truncate(order)
    return SeriesComparison(lhs, rhs)


def sun_euler_spec(order: int) -> TruncatedSumSpec:
    """sum_k (1 + q^(2k+1))/(1 + q) (q; q^2)_k^2 / (q^3; q^2)_k^2 q^k."""
    return TruncatedSumSpec(
        pochhammers=(
            QPochhammerFactor(3, 2, 1, negated=True),
            QPochhammerFactor(1, 2, -1, negated=True),
            QPochhammerFactor(1, 2, 2),
            QPochhammerFactor(3, 2, -2),
        ),
        qpower=QPowerFactor(beta=Fraction(1)),
        k_from=0,
        k_to=_term_cap(order),
    )


def compare_sun_euler(order: int = DEFAULT_ORDER) -> SeriesComparison:
    """The q^2, a = q^2, b = c = d = q case of Rogers' sum (a q-analogue of sum 1/(2k+1)^2)."""
    lhs = series_sum(sun_euler_spec(order), order)
    rhs = infinite_product_series([4, 2, 2, 2], [3, 3, 3, 1], 2, order)
    return SeriesComparison(lhs, rhs)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of one identity instance, for reports."""

    identity: str
    params: dict[str, int | list[int]]
    holds: bool
    order: int | None = None
    first_mismatch: int | None = None


@dataclass(frozen=True)
class IdentityEntry:
    """A registered identity: parameter defaults and the function that checks it."""

    id: str
    description: str
    defaults: Mapping[str, int | list[int]]
    runner: Callable[[dict[str, int | list[int]], int], IdentityCheck]
    series: bool = False
    examples: tuple[dict[str, int | list[int]], ...] = field(default_factory=tuple)


def _as_int(value: int | list[int]) -> int:
    if isinstance(value, list):
        raise ValueError("expected a single integer parameter")
    return value


def _as_list(value: int | list[int]) -> list[int]:
    return value if isinstance(value, list) else [value]


def _run_6phi5(params: dict[str, int | list[int]], order: int) -> IdentityCheck:
    a, b, c, n, base = (_as_int(params[key]) for key in ("a", "b", "c", "n", "base"))
    return IdentityCheck("6phi5-term", params, check_6phi5_terminating(a, b, c, n, base))


def _run_watson(params: dict[str, int | list[int]], order: int) -> IdentityCheck:
    a, b, c, d, e, n, base = (_as_int(params[key]) for key in ("a", "b", "c", "d", "e", "n", "base"))
    return IdentityCheck("watson-8phi7", params, check_watson_8phi7(a, b, c, d, e, n, base))


def _run_andrews(params: dict[str, int | list[int]], order: int) -> IdentityCheck:
    m, a, n, base = (_as_int(params[key]) for key in ("m", "a", "n", "base"))
    holds = check_andrews(m, a, _as_list(params["b"]), _as_list(params["c"]), n, base)
    return IdentityCheck("andrews-m", params, holds)


def _series_result(
    identity: str, params: dict[str, int | list[int]], order: int, comparison: SeriesComparison
) -> IdentityCheck:
    return IdentityCheck(identity, params, comparison.holds, order, comparison.first_mismatch)


def _run_rogers(params: dict[str, int | list[int]], order: int) -> IdentityCheck:
    a, b, c, d, base = (_as_int(params[key]) for key in ("a", "b", "c", "d", "base"))
    return _series_result("rogers-6phi5", params, order, compare_rogers_6phi5(a, b, c, d, base, order))


def _run_rdid(params: dict[str, int | list[int]], order: int) -> IdentityCheck:
    return _series_result("rdid", params, order, compare_rdid(_as_int(params["r"]), order))


def _run_sun_euler(params: dict[str, int | list[int]], order: int) -> IdentityCheck:
    return _series_result("sun-euler", params, order, compare_sun_euler(order))


IDENTITIES: dict[str, IdentityEntry] = {
    entry.id: entry
    for entry in (
        IdentityEntry(
            "6phi5-term",
            "terminating very-well-poised 6phi5 summation",
            {"a": 1, "b": 1, "c": 10, "n": 2, "base": 4},
            _run_6phi5,
            examples=({"a": 1, "b": 1, "c": 10, "n": 2, "base": 4}, {"a": 3, "b": 1, "c": 2, "n": 3, "base": 2}),
        ),
        IdentityEntry(
            "watson-8phi7",
            "Watson's 8phi7 to 4phi3 transformation",
            {"a": 1, "b": 1, "c": 1, "d": 1, "e": 1, "n": 1, "base": 4},
            _run_watson,
            examples=(
                {"a": 1, "b": 1, "c": 1, "d": 1, "e": 1, "n": 1, "base": 4},
                {"a": 3, "b": 1, "c": 2, "d": 1, "e": 3, "n": 2, "base": 2},
            ),
        ),
        IdentityEntry(
            "andrews-m",
            "Andrews' multiseries extension of Watson's transformation",
            {"m": 2, "a": 1, "b": [1, 1], "c": [1, 26], "n": 4, "base": 6},
            _run_andrews,
            examples=({"m": 2, "a": 1, "b": [1, 1], "c": [1, 26], "n": 4, "base": 6},),
        ),
        IdentityEntry(
            "rogers-6phi5",
            "Rogers' nonterminating 6phi5 summation (truncated series)",
            {"a": 1, "b": 1, "c": 1, "d": 1, "base": 4},
            _run_rogers,
            series=True,
            examples=({"a": 1, "b": 1, "c": 1, "d": 1, "base": 4}, {"a": 5, "b": 1, "c": 2, "d": 1, "base": 3}),
        ),
        IdentityEntry(
            "rdid",
            "sum [8k+r] (q^r;q^4)_k^4/(q^4;q^4)_k^4 q^((4-2r)k) as an infinite product, r < 2",
            {"r": 1},
            _run_rdid,
            series=True,
            examples=({"r": 1}, {"r": -1}),
        ),
        IdentityEntry(
            "sun-euler",
            "q-analogue of Euler's sum of 1/(2k+1)^2",
            {},
            _run_sun_euler,
            series=True,
            examples=({},),
        ),
    )
}


def get_identity(identity: str) -> IdentityEntry:
    try:
        return IDENTITIES[identity]
    except KeyError:
        raise UnknownIdentityError(identity) from None


def run_identity(
    identity: str, params: Mapping[str, int | list[int]] | None = None, order: int = DEFAULT_ORDER
) -> IdentityCheck:
    """Checks one identity instance, filling unspecified parameters from the defaults.

    Raises:
      UnknownIdentityError: If the identity id is not registered.
      ValueError: If a parameter is unknown or the instance is not admissible.
    """
    entry = get_identity(identity)
    merged: dict[str, int | list[int]] = dict(entry.defaults)
    for key, value in (params or {}).items():
        if key not in entry.defaults:
            raise ValueError(f"identity {identity!r} has no parameter {key!r}")
        merged[key] = value
    if order < 1:
        raise ValueError("truncation order must be at least 1")
    logger.debug("checking %s with %s to order %d", identity, merged, order)
    return entry.runner(merged, order)

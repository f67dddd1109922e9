"""q-combinatorial building blocks and declarative truncated sums.

Every summand handled by the toolkit has the shape

    [u*k + v]_{q^s} * sign^k * q^(alpha*k^2 + beta*k) * prod_i (q^a_i; q^d_i)_k^(e_i)

with integer exponents throughout. A :class:`TruncatedSumSpec` records that
shape. :func:`iterate_terms` walks the summands once, normalizing every factor
1 -/+ q^t into a scalar, a power of q and binomials with t > 0. The same walk
feeds the exact polynomial fold below, the residue fold in
:mod:`qcong.congruence` and the numeric jets in :mod:`qcong.oracle`.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol, TypeVar

from qcong.exact import Coefficient
from qcong.qpoly import LaurentPoly, RationalFunction, TruncatedSeries, divrem

logger = logging.getLogger(__name__)

E = TypeVar("E")


class VanishingDenominatorError(ValueError):
    """A denominator factor (1 - q^0) occurs inside the summation range."""


class NonIntegralExponentError(ValueError):
    """The q-power alpha*k^2 + beta*k is not an integer at some k."""


@dataclass(frozen=True)
class QPochhammerFactor:
    """(q^a; q^d)_k raised to ``exponent``; ``negated`` gives (-q^a; q^d)_k."""

    a: int
    d: int
    exponent: int = 1
    negated: bool = False

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"Pochhammer step must be positive, got d={self.d}")
        if self.exponent == 0:
            raise ValueError("Pochhammer exponent must be nonzero")

    @property
    def in_numerator(self) -> bool:
        return self.exponent > 0


@dataclass(frozen=True)
class BracketFactor:
    """The q-integer [u*k + v]_{q^s}."""

    u: int
    v: int
    s: int = 1

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"bracket base exponent must be positive, got s={self.s}")

    def argument(self, k: int) -> int:
        return self.u * k + self.v


@dataclass(frozen=True)
class QPowerFactor:
    """sign^k * q^(alpha*k^2 + beta*k)."""

    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.sign not in (1, -1):
            raise ValueError("q-power sign must be +1 or -1")

    def exponent(self, k: int) -> int:
        value = self.alpha * k * k + self.beta * k
        if value.denominator != 1:
            raise NonIntegralExponentError(
                f"q-power exponent {self.alpha}*k^2 + {self.beta}*k = {value} is not an integer at k={k}"
            )
        return value.numerator

    def integral_everywhere(self) -> bool:
        """True when the exponent is an integer for every integer k."""
        return (2 * self.alpha).denominator == 1 and (self.alpha + self.beta).denominator == 1


@dataclass(frozen=True)
class TruncatedSumSpec:
    """A finite sum over k_from <= k <= k_to of one summand shape."""

    pochhammers: tuple[QPochhammerFactor, ...] = ()
    qpower: QPowerFactor = field(default_factory=QPowerFactor)
    k_from: int = 0
    k_to: int = 0
    bracket: BracketFactor | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "pochhammers", tuple(self.pochhammers))
        if self.k_from < 0:
            raise ValueError("summation must start at k >= 0")
        if self.k_from > self.k_to:
            raise ValueError(f"empty summation range {self.k_from}..{self.k_to}")

    def with_range(self, k_from: int, k_to: int) -> TruncatedSumSpec:
        return TruncatedSumSpec(self.pochhammers, self.qpower, k_from, k_to, self.bracket)


@dataclass(frozen=True, slots=True)
class Binomial:
    """The factor (1 - q^t)^power, or (1 + q^t)^power when negated; t > 0."""

    t: int
    negated: bool = False
    power: int = 1

    def poly(self) -> LaurentPoly:
        return LaurentPoly.binomial(self.t, self.negated) ** self.power


@dataclass(frozen=True, slots=True)
class TermStep:
    """Normalized data of the k-th summand.

    ``numerator``/``denominator`` hold only the binomials that enter at this k
    (Pochhammer index j = k - 1). The summand equals

        scalar * q^shift * [m]_{q^s} * prod(all numerator binomials so far)
        / prod(all denominator binomials so far)

    where ``bracket`` is (m, s) with m >= 2, or None for a unit bracket.
    """

    k: int
    numerator: tuple[Binomial, ...]
    denominator: tuple[Binomial, ...]
    scalar: Fraction
    shift: int
    bracket: tuple[int, int] | None
    zero: bool


def iterate_terms(spec: TruncatedSumSpec) -> Iterator[TermStep]:
    """Yields normalized summands for k = 0..k_to.

    Terms with k < k_from are yielded too so consumers can accumulate their
    factors. The walk stops early once a numerator factor 1 - q^0 appears,
    since every later summand is zero.

    Raises:
      VanishingDenominatorError: A denominator factor 1 - q^0 appears first.
      NonIntegralExponentError: The q-power is fractional at some k.
    """
    scalar = Fraction(1)
    shift = 0
    for k in range(spec.k_to + 1):
        numerator: list[Binomial] = []
        denominator: list[Binomial] = []
        if k > 0:
            j = k - 1
            for factor in spec.pochhammers:
                t = factor.a + j * factor.d
                power = abs(factor.exponent)
                if t == 0:
                    if factor.negated:
                        scalar = scalar * 2**power if factor.in_numerator else scalar / 2**power
                        continue
                    if factor.in_numerator:
                        logger.debug("summand vanishes from k=%d on (factor 1 - q^0)", k)
                        return
                    raise VanishingDenominatorError(
                        f"denominator factor (q^{factor.a}; q^{factor.d})_k vanishes at k={k}"
                    )
                if t < 0:
                    # 1 -/+ q^t = -/+ q^t (1 -/+ q^-t)
                    if not factor.negated and power % 2:
                        scalar = -scalar
                    shift += t * power if factor.in_numerator else -t * power
                    t = -t
                target = numerator if factor.in_numerator else denominator
                target.append(Binomial(t, factor.negated, power))
        term_scalar = scalar if spec.qpower.sign == 1 or k % 2 == 0 else -scalar
        term_shift = shift + spec.qpower.exponent(k)
        bracket: tuple[int, int] | None = None
        zero = False
        if spec.bracket is not None:
            m, s = spec.bracket.argument(k), spec.bracket.s
            if m == 0:
                zero = True
            elif m < 0:
                term_scalar = -term_scalar
                term_shift += s * m
                m = -m
            if m >= 2:
                bracket = (m, s)
        yield TermStep(k, tuple(numerator), tuple(denominator), term_scalar, term_shift, bracket, zero)


class SumAlgebra(Protocol[E]):
    """Target ring for folding a truncated sum over its common denominator."""

    def one(self) -> E: ...

    def zero(self) -> E: ...

    def mul_binomial(self, value: E, factor: Binomial) -> E: ...

    def summand(self, core: E, step: TermStep) -> E: ...

    def add(self, left: E, right: E) -> E: ...


def fold_sum(spec: TruncatedSumSpec, algebra: SumAlgebra[E]) -> tuple[E, E]:
    """Sums ``spec`` over the common denominator D of its last summand.

    Returns (N, D) with N/D equal to the sum. Horner form keeps the fold free
    of division: with D_k the denominator of summand k,
    N = sum_k numer_k * D / D_k is accumulated by multiplying the running total
    by each new denominator binomial as it appears.
    """
    core = algebra.one()
    denominator = algebra.one()
    total: E | None = None
    for step in iterate_terms(spec):
        for factor in step.numerator:
            core = algebra.mul_binomial(core, factor)
        for factor in step.denominator:
            denominator = algebra.mul_binomial(denominator, factor)
            if total is not None:
                total = algebra.mul_binomial(total, factor)
        if step.k < spec.k_from:
            continue
        value = algebra.zero() if step.zero else algebra.summand(core, step)
        total = value if total is None else algebra.add(total, value)
    return (total if total is not None else algebra.zero()), denominator


class ExactAlgebra:
    """Folds into exact Laurent polynomials."""

    def one(self) -> LaurentPoly:
        return LaurentPoly.one()

    def zero(self) -> LaurentPoly:
        return LaurentPoly.zero()

    def mul_binomial(self, value: LaurentPoly, factor: Binomial) -> LaurentPoly:
        return value * factor.poly()

    def summand(self, core: LaurentPoly, step: TermStep) -> LaurentPoly:
        value = core.shift(step.shift).scale(step.scalar)
        if step.bracket is not None:
            value = value * q_integer(*step.bracket)
        return value

    def add(self, left: LaurentPoly, right: LaurentPoly) -> LaurentPoly:
        return left + right


EXACT = ExactAlgebra()


def q_integer(m: int, s: int = 1) -> LaurentPoly:
    """Returns [m]_{q^s} = (q^(s*m) - 1)/(q^s - 1) for any integer m.

    Raises:
      ValueError: If s < 1.
    """
    if s < 1:
        raise ValueError(f"q-integer base exponent must be positive, got s={s}")
    if m == 0:
        return LaurentPoly.zero()
    if m < 0:
        return -q_integer(-m, s).shift(s * m)
    return LaurentPoly.from_dense([1 if i % s == 0 else 0 for i in range(s * (m - 1) + 1)])


def pochhammer(a: int, d: int, k: int, negated: bool = False) -> LaurentPoly:
    """Returns (q^a; q^d)_k, or (-q^a; q^d)_k when negated.

    Raises:
      ValueError: If k < 0 or d < 1.
    """
    if k < 0:
        raise ValueError("Pochhammer length must be non-negative")
    if d < 1:
        raise ValueError("Pochhammer step must be positive")
    result = LaurentPoly.one()
    for j in range(k):
        result = result * LaurentPoly.binomial(a + j * d, negated)
    return result


def gaussian_binomial(n: int, k: int) -> LaurentPoly:
    """Returns the q-binomial coefficient [n choose k] as a polynomial."""
    if k < 0 or k > n:
        return LaurentPoly.zero()
    k = min(k, n - k)
    result = LaurentPoly.one()
    for j in range(1, k + 1):
        result, remainder = divrem(
            result * LaurentPoly.binomial(n - k + j), LaurentPoly.binomial(j)
        )
        if not remainder.is_zero():
            raise ArithmeticError("inexact q-binomial division")
    return result


def term(spec: TruncatedSumSpec, k: int) -> RationalFunction:
    """Returns the exact k-th summand of ``spec``.

    Raises:
      ValueError: If k lies outside k_from..k_to.
    """
    if not spec.k_from <= k <= spec.k_to:
        raise ValueError(f"k={k} outside the summation range {spec.k_from}..{spec.k_to}")
    numerator = LaurentPoly.one()
    denominator = LaurentPoly.one()
    for step in iterate_terms(spec.with_range(0, k)):
        for factor in step.numerator:
            numerator = numerator * factor.poly()
        for factor in step.denominator:
            denominator = denominator * factor.poly()
        if step.k == k:
            if step.zero:
                return RationalFunction(LaurentPoly.zero(), denominator)
            return RationalFunction(EXACT.summand(numerator, step), denominator)
    return RationalFunction(LaurentPoly.zero(), denominator)


def sum_over_common_denominator(spec: TruncatedSumSpec) -> RationalFunction:
    """Returns the whole sum as one unreduced fraction N/D.

    D is the product of the denominator Pochhammers of the last summand and N
    is formed without any polynomial division.
    """
    numerator, denominator = fold_sum(spec, EXACT)
    return RationalFunction(numerator, denominator)


def well_poised_factors(a: int, d: int) -> tuple[QPochhammerFactor, QPochhammerFactor]:
    """Pochhammers for (q a^(1/2), -q a^(1/2); p)_k / (a^(1/2), -a^(1/2); p)_k with p = q^d.

    The quotient equals (a p^2; p^2)_k / (a; p^2)_k = (1 - a p^(2k)) / (1 - a),
    so no square root of a = q^a is needed.
    """
    return QPochhammerFactor(a + 2 * d, 2 * d, 1), QPochhammerFactor(a, 2 * d, -1)


def hypergeometric_spec(
    numerator_params: Sequence[int],
    denominator_params: Sequence[int],
    d: int,
    z_exponent: int,
    count: int,
    z_sign: int = 1,
    well_poised: int | None = None,
) -> TruncatedSumSpec:
    """Spec of the first ``count`` terms of an r+1 phi r series in base p = q^d.

    Parameters are exponents: ``numerator_params`` [a_1, ...] stand for the
    q^a_i; the factor (p; p)_k is included automatically. ``well_poised`` adds
    the pair (q a^(1/2), -q a^(1/2)) over (a^(1/2), -a^(1/2)) for a = q^well_poised.
    """
    if count < 1:
        raise ValueError("a partial sum needs at least one term")
    factors = [QPochhammerFactor(a, d, 1) for a in numerator_params]
    factors += [QPochhammerFactor(b, d, -1) for b in denominator_params]
    factors.append(QPochhammerFactor(d, d, -1))
    if well_poised is not None:
        factors.extend(well_poised_factors(well_poised, d))
    return TruncatedSumSpec(
        pochhammers=tuple(factors),
        qpower=QPowerFactor(beta=Fraction(z_exponent), sign=z_sign),
        k_from=0,
        k_to=count - 1,
    )


def hypergeometric_phi(
    numerator_params: Sequence[int],
    denominator_params: Sequence[int],
    d: int,
    z_exponent: int,
    count: int,
    z_sign: int = 1,
    well_poised: int | None = None,
) -> RationalFunction:
    """Exact partial sum of a basic hypergeometric series with q-power parameters."""
    spec = hypergeometric_spec(
        numerator_params, denominator_params, d, z_exponent, count, z_sign, well_poised
    )
    return sum_over_common_denominator(spec)


@dataclass(frozen=True)
class _SeriesPlan:
    steps: tuple[TermStep, ...]
    lowest: int


def _plan_series(spec: TruncatedSumSpec, order: int) -> _SeriesPlan:
    qpower = spec.qpower
    if qpower.alpha < 0 or (qpower.alpha == 0 and qpower.beta <= 0):
        raise ValueError("the summand's q-power does not grow; the series is not formal")
    steps: list[TermStep] = []
    for step in iterate_terms(spec):
        steps.append(step)
        k = step.k
        settled = all(f.a + k * f.d >= 0 for f in spec.pochhammers if f.in_numerator)
        growing = 2 * qpower.alpha * k + qpower.alpha + qpower.beta >= 0
        bracket_ok = spec.bracket is None or spec.bracket.argument(k) > 0 and spec.bracket.u >= 0
        if step.k >= spec.k_from and step.shift > order and settled and growing and bracket_ok:
            break
    included = [s.shift for s in steps if s.k >= spec.k_from and not s.zero]
    return _SeriesPlan(tuple(steps), min(included, default=order + 1))


def series_sum(spec: TruncatedSumSpec, order: int) -> TruncatedSeries:
    """Expands a (possibly nonterminating) sum as a series through q^order.

    ``spec.k_to`` bounds the summation; pass a large value for a formally
    infinite sum. Summation stops once every later summand starts beyond
    q^order. Denominator binomials are divided out incrementally as geometric
    series, so no rational function is ever formed.

    Raises:
      ValueError: If the summand's q-power does not grow (non-formal series).
    """
    if order < 0:
        raise ValueError("truncation order must be non-negative")
    plan = _plan_series(spec, order)
    width = order - plan.lowest
    result: list[Coefficient] = [0] * max(0, order - plan.lowest + 1)
    if width < 0:
        return TruncatedSeries.build(order + 1, [], order)
    core = TruncatedSeries.one(width)
    for step in plan.steps:
        for factor in step.numerator:
            core = core.mul_binomial(factor.t, factor.negated, factor.power)
        for factor in step.denominator:
            core = core.div_binomial(factor.t, factor.negated, factor.power)
        if step.k < spec.k_from or step.zero or step.shift > order:
            continue
        value = core
        if step.bracket is not None:
            m, s = step.bracket
            value = value.mul_binomial(s * m).div_binomial(s)
        base = step.shift - plan.lowest
        for i, c in enumerate(value.coefficients):
            if base + i > width:
                break
            if c:
                result[base + i] += step.scalar * c
    return TruncatedSeries.build(plan.lowest, result, order)


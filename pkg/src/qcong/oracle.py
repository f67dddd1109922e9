"""Numeric root-of-unity cross-check for cyclotomic divisibility.

Phi_n^e divides P exactly when P and its first e - 1 derivatives vanish at
every primitive n-th root of unity. Everything here evaluates Taylor jets
P(zeta + h) mod h^J in mpmath complex arithmetic. Results are used only to
cross-check the exact verdicts and never replace them.

Since every polynomial checked has rational coefficients, a root and its
complex conjugate give conjugate values, so only one of each pair is
evaluated.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd, log10

import mpmath

from qcong.congruence import CongruenceVerdict, FactorVerdict, ModulusSpec, denominator_order, expand_modulus
from qcong.exact import Coefficient
from qcong.qpoly import LaurentPoly
from qcong.qseries import Binomial, TermStep, TruncatedSumSpec, fold_sum
from qcong.types import Verdict

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 60

Jet = list


class OraclePrecisionError(ValueError):
    """A value fell between the zero and nonzero thresholds."""


@lru_cache(maxsize=65536)
def binomial_coefficient(m: int, i: int) -> int:
    """C(m, i) for any integer m (generalized for negative m)."""
    numerator = 1
    denominator = 1
    for j in range(i):
        numerator *= m - j
        denominator *= j + 1
    return numerator // denominator


def primitive_root_indices(n: int) -> list[int]:
    """Indices j with zeta = exp(2 pi i j / n) primitive, one per conjugate pair."""
    if n == 1:
        return [0]
    return [j for j in range(1, n) if gcd(j, n) == 1 and j <= n - j]


def _log10(value: Coefficient) -> int:
    fraction = Fraction(value)
    if fraction <= 1:
        return 0
    return ceil((fraction.numerator.bit_length() - fraction.denominator.bit_length() + 1) * log10(2))


def working_digits(precision: int, magnitude: Coefficient) -> int:
    """Working precision so that rounding stays far below 10^(-precision/2)."""
    return precision + _log10(magnitude) + 10


def _classify(value: mpmath.mpc, precision: int) -> bool:
    """True for zero, False for nonzero; raises when the value is ambiguous."""
    size = abs(value)
    if size <= mpmath.mpf(10) ** (-mpmath.mpf(precision) / 2):
        return True
    if size > mpmath.mpf(10) ** (-mpmath.mpf(precision) / 3):
        return False
    raise OraclePrecisionError(f"|value| = {mpmath.nstr(size, 5)} is ambiguous at {precision} digits")


def _mul_jets(left: Jet, right: Jet, zero: object) -> Jet:
    size = len(left)
    result = [zero] * size
    for i, a in enumerate(left):
        if not a:
            continue
        for j in range(size - i):
            result[i + j] += a * right[j]
    return result


class JetAlgebra:
    """Taylor jets at one root of unity, truncated to ``length`` coefficients."""

    def __init__(self, n: int, index: int, length: int) -> None:
        self.n = n
        self.length = length
        self.powers = [mpmath.expjpi(mpmath.mpf(2 * index * r) / n) for r in range(n)]
        self._zero = mpmath.mpc(0)

    def monomial(self, m: int, length: int | None = None) -> Jet:
        """Jet of q^m: sum_i C(m, i) zeta^(m - i) h^i."""
        size = self.length if length is None else length
        return [binomial_coefficient(m, i) * self.powers[(m - i) % self.n] for i in range(size)]

    def one(self) -> Jet:
        return [mpmath.mpc(1)] + [self._zero] * (self.length - 1)

    def zero(self) -> Jet:
        return [self._zero] * self.length

    def mul(self, left: Jet, right: Jet) -> Jet:
        return _mul_jets(left, right, self._zero)

    def add(self, left: Jet, right: Jet) -> Jet:
        return [a + b for a, b in zip(left, right, strict=True)]

    def binomial(self, t: int, negated: bool, length: int | None = None) -> Jet:
        sign = 1 if negated else -1
        jet = [sign * c for c in self.monomial(t, length)]
        jet[0] += 1
        return jet

    def mul_binomial(self, value: Jet, factor: Binomial) -> Jet:
        jet = self.binomial(factor.t, factor.negated)
        for _ in range(factor.power):
            value = self.mul(value, jet)
        return value

    def bracket(self, m: int, s: int) -> Jet:
        """Jet of (1 - q^(s m)) / (1 - q^s); both vanish simply when n | s."""
        shift = 1 if s % self.n == 0 else 0
        size = self.length + shift
        numerator = self.binomial(s * m, False, size)[shift:]
        denominator = self.binomial(s, False, size)[shift:]
        result: Jet = []
        for j in range(self.length):
            acc = numerator[j]
            for i in range(1, j + 1):
                acc -= denominator[i] * result[j - i]
            result.append(acc / denominator[0])
        return result

    def summand(self, core: Jet, step: TermStep) -> Jet:
        scalar = mpmath.mpf(step.scalar.numerator) / step.scalar.denominator
        value = [scalar * c for c in self.mul(core, self.monomial(step.shift))]
        if step.bracket is not None:
            value = self.mul(value, self.bracket(*step.bracket))
        return value

    def from_poly(self, p: LaurentPoly) -> Jet:
        result = self.zero()
        for exponent, c in p.items():
            coefficient = mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator
            result = self.add(result, [coefficient * x for x in self.monomial(exponent)])
        return result


class MajorantAlgebra:
    """Coefficient-wise upper bounds for the jets, valid at every root of unity."""

    def __init__(self, length: int) -> None:
        self.length = length

    def monomial(self, m: int, length: int | None = None) -> Jet:
        size = self.length if length is None else length
        return [abs(binomial_coefficient(m, i)) for i in range(size)]

    def one(self) -> Jet:
        return [1] + [0] * (self.length - 1)

    def zero(self) -> Jet:
        return [0] * self.length

    def mul(self, left: Jet, right: Jet) -> Jet:
        return _mul_jets(left, right, 0)

    def add(self, left: Jet, right: Jet) -> Jet:
        return [a + b for a, b in zip(left, right, strict=True)]

    def mul_binomial(self, value: Jet, factor: Binomial) -> Jet:
        jet = self.monomial(factor.t)
        jet[0] += 1
        for _ in range(factor.power):
            value = self.mul(value, jet)
        return value

    def summand(self, core: Jet, step: TermStep) -> Jet:
        value = [abs(step.scalar) * c for c in self.mul(core, self.monomial(step.shift))]
        if step.bracket is not None:
            m, s = step.bracket
            bound = [sum(binomial_coefficient(s * j, i) for j in range(m)) for i in range(self.length)]
            value = self.mul(value, bound)
        return value

    def from_poly(self, p: LaurentPoly) -> Jet:
        result = self.zero()
        for exponent, c in p.items():
            result = self.add(result, [abs(c) * x for x in self.monomial(exponent)])
        return result


def root_of_unity_oracle(p: LaurentPoly, n: int, e: int, precision_digits: int = DEFAULT_PRECISION) -> bool:
    """True iff P and its first e - 1 derivatives vanish at every primitive n-th root.

    A value counts as zero below 10^(-D/2) and as nonzero above 10^(-D/3), with
    D = max(precision_digits, 2*deg(P)/n).

    Raises:
      OraclePrecisionError: If a value falls between the two thresholds.
    """
    if e < 1:
        raise ValueError("multiplicity e must be positive")
    if p.is_zero():
        return True
    precision = max(precision_digits, ceil(2 * max(abs(p.min_exp), p.max_exp) / n))
    majorant = MajorantAlgebra(e).from_poly(p)
    with mpmath.workdps(working_digits(precision, max(majorant))):
        for index in primitive_root_indices(n):
            jet = JetAlgebra(n, index, e).from_poly(p)
            if not all(_classify(value, precision) for value in jet):
                return False
    return True


def _leading_zeros(jet: Jet, precision: int) -> int:
    for i, value in enumerate(jet):
        if not _classify(value, precision):
            return i
    return len(jet)


def sum_oracle(
    spec: TruncatedSumSpec,
    rhs: LaurentPoly,
    modulus: ModulusSpec,
    precision_digits: int = DEFAULT_PRECISION,
) -> CongruenceVerdict:
    """Numeric counterpart of check_sum_congruence with the same semantics.

    The working precision grows with a coefficient-wise bound on the jets so
    cancellation between large summands cannot fake a zero.

    Raises:
      OraclePrecisionError: If some jet coefficient cannot be classified.
    """
    results: list[FactorVerdict] = []
    for n, e in expand_modulus(modulus).factors:
        v = denominator_order(spec, n)
        length = e + v
        bounds = MajorantAlgebra(length)
        numerator_bound, denominator_bound = fold_sum(spec, bounds)
        difference_bound = bounds.add(numerator_bound, bounds.mul(bounds.from_poly(rhs), denominator_bound))
        attained = length
        defined = True
        with mpmath.workdps(working_digits(precision_digits, max(difference_bound))):
            for index in primitive_root_indices(n):
                ring = JetAlgebra(n, index, length)
                numerator, denominator = fold_sum(spec, ring)
                if _leading_zeros(numerator[:v], precision_digits) < v:
                    defined = False
                    break
                scaled_rhs = ring.mul(ring.from_poly(rhs), denominator)
                difference = [a - b for a, b in zip(numerator, scaled_rhs, strict=True)]
                attained = min(attained, _leading_zeros(difference, precision_digits))
        if not defined:
            results.append(FactorVerdict(n, e, v, 0, Verdict.UNDEFINED))
            continue
        status = Verdict.HOLDS if attained - v >= e else Verdict.FAILS
        logger.debug("oracle Phi_%d^%d: %s", n, e, status.value)
        results.append(FactorVerdict(n, e, v, attained - v, status))
    return CongruenceVerdict(tuple(results))

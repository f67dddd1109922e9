"""Congruences of rational functions modulo products of cyclotomic powers.

A modulus is always a product of powers Phi_n(q)^e. Since Phi_n(0) = +-1, q is
a unit modulo every such power, so Laurent polynomials are brought into the
polynomial ring by one global q-shift before any division.

For N/D and a factor Phi_n^e, with v the multiplicity of Phi_n in D, the
congruence N/D == rhs is

- undefined when Phi_n^v does not divide N (the reduced denominator keeps Phi_n),
- true when Phi_n^(e+v) divides N - rhs*D,
- false otherwise.

When D is coprime to Phi_n this is the usual definition.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from qcong.exact import INFINITY, Coefficient, Valuation, as_rational
from qcong.qpoly import (
    LaurentPoly,
    RationalFunction,
    clear_q_power,
    cyclotomic,
    dense_divrem,
    dense_mul,
    dense_rem,
)
from qcong.qseries import Binomial, TermStep, TruncatedSumSpec, fold_sum, iterate_terms, pochhammer, q_integer
from qcong.types import Verdict

logger = logging.getLogger(__name__)


def _divisors(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if n % m == 0]


@dataclass(frozen=True)
class ModulusSpec:
    """Product of Phi_n^e (``cyclotomic_powers``) and [n]^e (``bracket_powers``)."""

    cyclotomic_powers: tuple[tuple[int, int], ...] = ()
    bracket_powers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "cyclotomic_powers", tuple(tuple(p) for p in self.cyclotomic_powers))
        object.__setattr__(self, "bracket_powers", tuple(tuple(p) for p in self.bracket_powers))
        for n, e in self.cyclotomic_powers + self.bracket_powers:
            if n < 1 or e < 1:
                raise ValueError(f"modulus factors need index >= 1 and exponent >= 1, got ({n}, {e})")

    @classmethod
    def phi(cls, *powers: tuple[int, int]) -> ModulusSpec:
        return cls(cyclotomic_powers=tuple(powers))

    def describe(self) -> str:
        parts = [f"[{n}]^{e}" if e > 1 else f"[{n}]" for n, e in self.bracket_powers]
        parts += [f"Phi_{n}^{e}" if e > 1 else f"Phi_{n}" for n, e in self.cyclotomic_powers]
        return " ".join(parts) or "1"


@dataclass(frozen=True)
class ExpandedModulus:
    """Canonical multiset of cyclotomic powers, sorted by index."""

    factors: tuple[tuple[int, int], ...]

    def polynomial(self) -> LaurentPoly:
        result = LaurentPoly.one()
        for n, e in self.factors:
            result = result * cyclotomic(n) ** e
        return result

    def exponent_of(self, n: int) -> int:
        return dict(self.factors).get(n, 0)


def expand_modulus(modulus: ModulusSpec) -> ExpandedModulus:
    """Rewrites [n] as the product of Phi_m over m | n, m > 1 and merges exponents."""
    exponents: dict[int, int] = {}
    for n, e in modulus.cyclotomic_powers:
        exponents[n] = exponents.get(n, 0) + e
    for n, e in modulus.bracket_powers:
        for m in _divisors(n):
            if m > 1:
                exponents[m] = exponents.get(m, 0) + e
    return ExpandedModulus(tuple(sorted(exponents.items())))


@dataclass(frozen=True)
class FactorVerdict:
    """Result for one cyclotomic power Phi_n^e.

    ``denominator_order`` is v = ord_Phi_n(D); ``attained`` is ord(N - rhs*D) - v,
    capped at the probed exponent.
    """

    n: int
    e: int
    denominator_order: int
    attained: Valuation
    status: Verdict

    @property
    def ring_degree(self) -> int:
        """Degree of Phi_n^(e+v), the residue ring the factor was decided in."""
        return cyclotomic(self.n).degree * (self.e + self.denominator_order)


@dataclass(frozen=True)
class CongruenceVerdict:
    """Fold of the per-factor verdicts of one congruence.

    ``denominator_coprime`` is false when the reduced denominator still shares
    a factor with the modulus, which makes the congruence undefined.
    """

    factors: tuple[FactorVerdict, ...]
    residue_degree: int | None = None

    @cached_property
    def status(self) -> Verdict:
        statuses = {f.status for f in self.factors}
        if Verdict.UNDEFINED in statuses:
            return Verdict.UNDEFINED
        if Verdict.FAILS in statuses:
            return Verdict.FAILS
        return Verdict.HOLDS

    @property
    def holds(self) -> bool:
        return self.status is Verdict.HOLDS

    @property
    def denominator_coprime(self) -> bool:
        return all(f.status is not Verdict.UNDEFINED for f in self.factors)

    @property
    def failing_factor(self) -> tuple[int, int] | None:
        for f in self.factors:
            if f.status is not Verdict.HOLDS:
                return (f.n, f.e)
        return None


def _strip(coefficients: list[Coefficient]) -> list[Coefficient]:
    while coefficients and not coefficients[-1]:
        coefficients.pop()
    return coefficients


def _order_of_dense(coefficients: list[Coefficient], n: int, cap: int | None) -> Valuation:
    work = _strip(list(coefficients))
    if not work:
        return INFINITY
    divisor = cyclotomic(n).polynomial_coefficients()
    count = 0
    while cap is None or count < cap:
        quotient, remainder = dense_divrem(work, divisor)
        if any(remainder):
            break
        work = _strip(quotient)
        count += 1
    return count


def cyclotomic_order(p: LaurentPoly, n: int, cap: int | None = None) -> Valuation:
    """Multiplicity of Phi_n in P, found by successive exact divisions.

    Returns INFINITY for the zero polynomial; with ``cap`` the count stops there.
    """
    if p.is_zero():
        return INFINITY
    return _order_of_dense(clear_q_power(p).polynomial_coefficients(), n, cap)


def _residue_degree(coefficients: list[Coefficient], n: int, exponent: int) -> int:
    power = (cyclotomic(n) ** exponent).polynomial_coefficients()
    return len(_strip(dense_rem(coefficients, power))) - 1


def _factor_verdict(n: int, e: int, v: int, numerator_order: Valuation, difference_order: Valuation) -> FactorVerdict:
    if numerator_order < v:
        return FactorVerdict(n, e, v, 0, Verdict.UNDEFINED)
    attained = difference_order if difference_order is INFINITY else difference_order - v
    status = Verdict.HOLDS if attained >= e else Verdict.FAILS
    return FactorVerdict(n, e, v, attained, status)


def check_congruence(
    lhs: RationalFunction,
    rhs: LaurentPoly,
    modulus: ModulusSpec,
    extra: int = 0,
) -> CongruenceVerdict:
    """Decides lhs == rhs modulo the modulus by exact polynomial division.

    ``extra`` probes that many powers beyond each required exponent so scans can
    report how far a congruence actually goes.

    Raises:
      ValueError: If the modulus expands to nothing.
    """
    expanded = expand_modulus(modulus)
    if not expanded.factors:
        raise ValueError("modulus is trivial")
    numerator, denominator = lhs.numerator, lhs.denominator
    difference = numerator - rhs * denominator
    results: list[FactorVerdict] = []
    residue_degree: int | None = None
    for n, e in expanded.factors:
        v = cyclotomic_order(denominator, n)
        assert isinstance(v, int)
        verdict = _factor_verdict(
            n,
            e,
            v,
            cyclotomic_order(numerator, n, cap=v),
            cyclotomic_order(difference, n, cap=e + v + extra),
        )
        if verdict.status is Verdict.FAILS and residue_degree is None:
            residue_degree = _residue_degree(clear_q_power(difference).polynomial_coefficients(), n, e + v)
        logger.debug("Phi_%d^%d: v=%d attained=%s -> %s", n, e, v, verdict.attained, verdict.status.value)
        results.append(verdict)
    return CongruenceVerdict(tuple(results), residue_degree)


def divides_binomial(n: int, factor: Binomial) -> bool:
    """True when Phi_n divides 1 - q^t (n | t) or 1 + q^t (n | 2t, n does not divide t)."""
    if factor.negated:
        return (2 * factor.t) % n == 0 and factor.t % n != 0
    return factor.t % n == 0


def denominator_order(spec: TruncatedSumSpec, n: int) -> int:
    """Multiplicity of Phi_n in the common denominator of ``spec``, read off its binomials."""
    order = 0
    for step in iterate_terms(spec):
        for factor in step.denominator:
            if divides_binomial(n, factor):
                order += factor.power
    return order


class ResidueAlgebra:
    """Arithmetic in Q[q]/(Phi_n^E) on dense coefficient lists."""

    def __init__(self, n: int, exponent: int) -> None:
        self.n = n
        self.exponent = exponent
        self.modulus = (cyclotomic(n) ** exponent).polynomial_coefficients()
        self.size = len(self.modulus) - 1
        self._powers: dict[int, list[Coefficient]] = {0: self.one()}
        self._brackets: dict[tuple[int, int], list[Coefficient]] = {}
        # q * R(q) = M(q) - M(0) and M(0) = +-1, so q^-1 = -M(0) R(q).
        constant = self.modulus[0]
        self._inverse_q = self.reduce([-constant * c for c in self.modulus[1:]])

    def reduce(self, coefficients: list[Coefficient]) -> list[Coefficient]:
        if len(coefficients) <= self.size:
            return list(coefficients) + [0] * (self.size - len(coefficients))
        return dense_rem(coefficients, self.modulus)

    def from_poly(self, p: LaurentPoly) -> list[Coefficient]:
        if p.is_zero():
            return self.zero()
        low, dense = p.to_dense()
        return self.mul(self.reduce(dense), self.q_power(low))

    def one(self) -> list[Coefficient]:
        return [1] + [0] * (self.size - 1) if self.size else []

    def zero(self) -> list[Coefficient]:
        return [0] * self.size

    def mul(self, left: list[Coefficient], right: list[Coefficient]) -> list[Coefficient]:
        return self.reduce(dense_mul(left, right))

    def add(self, left: list[Coefficient], right: list[Coefficient]) -> list[Coefficient]:
        return [a + b for a, b in zip(left, right, strict=True)]

    def scale(self, value: list[Coefficient], factor: Coefficient) -> list[Coefficient]:
        return [c * factor for c in value]

    def q_power(self, t: int) -> list[Coefficient]:
        cached = self._powers.get(t)
        if cached is not None:
            return cached
        base = self.reduce([0, 1]) if t > 0 else self._inverse_q
        result = self.one()
        remaining = abs(t)
        while remaining:
            if remaining & 1:
                result = self.mul(result, base)
            remaining >>= 1
            if remaining:
                base = self.mul(base, base)
        self._powers[t] = result
        return result

    def mul_binomial(self, value: list[Coefficient], factor: Binomial) -> list[Coefficient]:
        sign = 1 if factor.negated else -1
        shifted = self.q_power(factor.t)
        for _ in range(factor.power):
            moved = self.mul(value, shifted)
            value = [a + sign * b for a, b in zip(value, moved, strict=True)]
        return value

    def bracket(self, m: int, s: int) -> list[Coefficient]:
        key = (m, s)
        if key not in self._brackets:
            self._brackets[key] = self.reduce(q_integer(m, s).polynomial_coefficients())
        return self._brackets[key]

    def summand(self, core: list[Coefficient], step: TermStep) -> list[Coefficient]:
        value = self.scale(self.mul(core, self.q_power(step.shift)), as_rational(step.scalar))
        if step.bracket is not None:
            value = self.mul(value, self.bracket(*step.bracket))
        return value

    def order(self, value: list[Coefficient], cap: int) -> Valuation:
        """Multiplicity of Phi_n in a residue, meaningful up to the ring exponent."""
        found = _order_of_dense(value, self.n, cap)
        return INFINITY if found is INFINITY else min(found, cap)


def check_sum_congruence(
    spec: TruncatedSumSpec,
    rhs: LaurentPoly,
    modulus: ModulusSpec,
    extra: int = 0,
) -> CongruenceVerdict:
    """Decides sum(spec) == rhs modulo the modulus without expanding the sum.

    Each factor Phi_n^e is handled in Q[q]/(Phi_n^(e+v+extra)); the sum is folded
    there term by term. Agrees with check_congruence on sum_over_common_denominator.
    """
    expanded = expand_modulus(modulus)
    if not expanded.factors:
        raise ValueError("modulus is trivial")
    results: list[FactorVerdict] = []
    residue_degree: int | None = None
    for n, e in expanded.factors:
        v = denominator_order(spec, n)
        cap = e + v + extra
        ring = ResidueAlgebra(n, cap)
        numerator, denominator = fold_sum(spec, ring)
        difference = [a - b for a, b in zip(numerator, ring.mul(ring.from_poly(rhs), denominator), strict=True)]
        numerator_order = ring.order(numerator, v)
        difference_order = ring.order(difference, cap)
        if difference_order is INFINITY:
            difference_order = cap
        verdict = _factor_verdict(n, e, v, numerator_order, difference_order)
        if verdict.status is Verdict.FAILS and residue_degree is None:
            residue_degree = _residue_degree(difference, n, e + v)
        logger.debug("Phi_%d^%d: v=%d attained=%s -> %s", n, e, v, verdict.attained, verdict.status.value)
        results.append(verdict)
    return CongruenceVerdict(tuple(results), residue_degree)


def residue_terms(
    spec: TruncatedSumSpec, n: int, exponent: int = 1
) -> tuple[ResidueAlgebra, list[tuple[list[Coefficient], list[Coefficient]]]]:
    """Reduces every summand k_from..k_to to a pair (numerator, denominator) mod Phi_n^exponent.

    Summands after the walk stops early are zero and are returned as (0, 1).
    """
    ring = ResidueAlgebra(n, exponent)
    core = ring.one()
    denominator = ring.one()
    terms: list[tuple[list[Coefficient], list[Coefficient]]] = []
    for step in iterate_terms(spec):
        for factor in step.numerator:
            core = ring.mul_binomial(core, factor)
        for factor in step.denominator:
            denominator = ring.mul_binomial(denominator, factor)
        if step.k < spec.k_from:
            continue
        terms.append((ring.zero() if step.zero else ring.summand(core, step), denominator))
    while len(terms) < spec.k_to - spec.k_from + 1:
        terms.append((ring.zero(), ring.one()))
    return ring, terms


def mod_square_property(r: int, alpha: int, n: int, d: int, k: int) -> bool:
    """Checks (q^(r - alpha*n), q^(r + alpha*n); q^d)_k == (q^r; q^d)_k^2 mod Phi_n^2.

    Raises:
      ValueError: If k is negative or exceeds n - 1.
    """
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n - 1, got k={k}, n={n}")
    difference = pochhammer(r - alpha * n, d, k) * pochhammer(r + alpha * n, d, k) - pochhammer(r, d, k) ** 2
    return cyclotomic_order(difference, n, cap=2) >= 2


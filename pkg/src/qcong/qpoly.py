"""Exact Laurent polynomials, rational functions and truncated series in q.

Coefficients are Python ints or ``fractions.Fraction``; integral values are
always stored as ints so the common integer-coefficient case stays on the fast
path. Large dense products of integer polynomials are computed by Kronecker
substitution, packing each coefficient vector into one big integer and letting
CPython's Karatsuba multiplication do the convolution.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Any

from qcong.exact import Coefficient, as_rational

_SPARSE_LIMIT = 24
_KRONECKER_LIMIT = 48


def _clean(value: Coefficient) -> Coefficient:
    if type(value) is int:
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _exact_div(value: Coefficient, divisor: Coefficient) -> Coefficient:
    if divisor == 1:
        return value
    if divisor == -1:
        return -value
    if type(value) is int and type(divisor) is int and value % divisor == 0:
        return value // divisor
    return _clean(Fraction(value) / divisor)


def _pack(coeffs: list[int], width: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def _unpack(value: int, count: int, width: int) -> list[int]:
    data = value.to_bytes(count * width, "little")
    return [int.from_bytes(data[i * width : (i + 1) * width], "little") for i in range(count)]


def _kronecker_mul(a: list[int], b: list[int]) -> list[int]:
    """Multiplies two integer coefficient vectors through one big-integer product."""
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    if bound == 0:
        return [0] * (len(a) + len(b) - 1)
    width = bound.bit_length() // 8 + 1
    a_pos = [c if c > 0 else 0 for c in a]
    a_neg = [-c if c < 0 else 0 for c in a]
    b_pos = [c if c > 0 else 0 for c in b]
    b_neg = [-c if c < 0 else 0 for c in b]
    same_sign = _pack(a_pos, width) * _pack(b_pos, width) + _pack(a_neg, width) * _pack(b_neg, width)
    total = _pack([abs(c) for c in a], width) * _pack([abs(c) for c in b], width)
    count = len(a) + len(b) - 1
    plus = _unpack(same_sign, count, width)
    minus = _unpack(total - same_sign, count, width)
    return [x - y for x, y in zip(plus, minus, strict=True)]


def dense_mul(a: list[Coefficient], b: list[Coefficient]) -> list[Coefficient]:
    """Multiplies dense coefficient vectors (index = exponent)."""
    if not a or not b:
        return []
    if min(len(a), len(b)) >= _KRONECKER_LIMIT:
        if all(type(c) is int for c in a) and all(type(c) is int for c in b):
            return _kronecker_mul(a, b)
        scale_a = lcm(*(Fraction(c).denominator for c in a))
        scale_b = lcm(*(Fraction(c).denominator for c in b))
        product = _kronecker_mul(
            [int(c * scale_a) for c in a],
            [int(c * scale_b) for c in b],
        )
        return [_exact_div(c, scale_a * scale_b) for c in product]
    result: list[Coefficient] = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                result[i + j] += x * y
    return result


def dense_divrem(
    numerator: list[Coefficient], divisor: list[Coefficient]
) -> tuple[list[Coefficient], list[Coefficient]]:
    """Classical long division of dense coefficient vectors.

    Args:
      numerator: Coefficients of P, index = exponent.
      divisor: Coefficients of M with a nonzero last entry.

    Returns:
      (quotient, remainder) with len(remainder) == len(divisor) - 1.

    Raises:
      ZeroDivisionError: If the divisor is empty.
    """
    if not divisor:
        raise ZeroDivisionError("division by the zero polynomial")
    degree = len(divisor) - 1
    lead = divisor[-1]
    work = list(numerator)
    if len(work) <= degree:
        return [], work + [0] * (degree - len(work))
    tail = [(j, c) for j, c in enumerate(divisor[:-1]) if c]
    quotient: list[Coefficient] = [0] * (len(work) - degree)
    for i in range(len(work) - 1, degree - 1, -1):
        c = work[i]
        if not c:
            continue
        factor = _exact_div(c, lead)
        base = i - degree
        quotient[base] = factor
        for j, d in tail:
            work[base + j] -= factor * d
        work[i] = 0
    return quotient, [_clean(c) for c in work[:degree]]


def dense_rem(numerator: list[Coefficient], divisor: list[Coefficient]) -> list[Coefficient]:
    """Remainder of dense long division, padded to len(divisor) - 1."""
    return dense_divrem(numerator, divisor)[1]


class LaurentPoly:
    """Sparse Laurent polynomial in q with exact rational coefficients.

    Instances are immutable; no zero coefficients are stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Coefficient | str] | None = None) -> None:
        clean: dict[int, Coefficient] = {}
        for exponent, value in (terms or {}).items():
            if not isinstance(exponent, int):
                raise TypeError("exponents must be integers")
            coefficient = as_rational(value)
            if coefficient:
                clean[exponent] = coefficient
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: dict[int, Coefficient]) -> LaurentPoly:
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls._wrap({})

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls._wrap({0: 1})

    @classmethod
    def constant(cls, value: Coefficient | str) -> LaurentPoly:
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coefficient: Coefficient | str = 1) -> LaurentPoly:
        """Returns coefficient * q^exponent."""
        return cls({exponent: coefficient})

    @classmethod
    def q(cls) -> LaurentPoly:
        return cls._wrap({1: 1})

    @classmethod
    def from_dense(cls, coefficients: Iterable[Coefficient], offset: int = 0) -> LaurentPoly:
        """Builds a polynomial from a coefficient vector starting at q^offset."""
        terms: dict[int, Coefficient] = {}
        for i, c in enumerate(coefficients):
            if c:
                terms[offset + i] = _clean(c)
        return cls._wrap(terms)

    @classmethod
    def binomial(cls, exponent: int, negated: bool = False) -> LaurentPoly:
        """Returns 1 - q^exponent, or 1 + q^exponent when negated."""
        sign = 1 if negated else -1
        if exponent == 0:
            return cls.constant(1 + sign)
        return cls._wrap({0: 1, exponent: sign})

    # Queries -----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def items(self) -> list[tuple[int, Coefficient]]:
        """Returns (exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[int, Coefficient]]:
        return iter(self.items())

    def coefficient(self, exponent: int) -> Coefficient:
        return self._terms.get(exponent, 0)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no exponents")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no exponents")
        return max(self._terms)

    @property
    def degree(self) -> int:
        return self.max_exp

    def is_polynomial(self) -> bool:
        """True when no negative exponent occurs."""
        return not self._terms or self.min_exp >= 0

    @property
    def leading_coefficient(self) -> Coefficient:
        return self._terms[self.max_exp]

    def to_dense(self) -> tuple[int, list[Coefficient]]:
        """Returns (offset, coefficients) covering min_exp..max_exp."""
        if not self._terms:
            return 0, []
        low, high = self.min_exp, self.max_exp
        dense: list[Coefficient] = [0] * (high - low + 1)
        for exponent, c in self._terms.items():
            dense[exponent - low] = c
        return low, dense

    def polynomial_coefficients(self) -> list[Coefficient]:
        """Dense coefficients from q^0; requires a genuine polynomial."""
        if not self.is_polynomial():
            raise ValueError("negative exponents present; shift by a q-power first")
        if not self._terms:
            return []
        dense: list[Coefficient] = [0] * (self.max_exp + 1)
        for exponent, c in self._terms.items():
            dense[exponent] = c
        return dense

    # Arithmetic --------------------------------------------------------------

    @staticmethod
    def _coerce(other: Any) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int | Fraction) and not isinstance(other, bool):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other: Any) -> LaurentPoly:
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        terms = dict(self._terms)
        for exponent, c in poly._terms.items():
            value = terms.get(exponent, 0) + c
            if value:
                terms[exponent] = _clean(value)
            else:
                terms.pop(exponent, None)
        return LaurentPoly._wrap(terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> LaurentPoly:
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return self + (-poly)

    def __rsub__(self, other: Any) -> LaurentPoly:
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return poly + (-self)

    def scale(self, factor: Coefficient) -> LaurentPoly:
        factor = as_rational(factor)
        if not factor:
            return LaurentPoly.zero()
        return LaurentPoly._wrap({e: _clean(c * factor) for e, c in self._terms.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiplies by q^k."""
        if k == 0:
            return self
        return LaurentPoly._wrap({e + k: c for e, c in self._terms.items()})

    def __mul__(self, other: Any) -> LaurentPoly:
        if isinstance(other, int | Fraction) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly.zero()
        small, large = (self, other) if len(self) <= len(other) else (other, self)
        if len(small) <= _SPARSE_LIMIT:
            terms: dict[int, Coefficient] = {}
            get = terms.get
            for e1, c1 in small._terms.items():
                for e2, c2 in large._terms.items():
                    e = e1 + e2
                    terms[e] = get(e, 0) + c1 * c2
            return LaurentPoly._wrap({e: _clean(c) for e, c in terms.items() if c})
        off_a, dense_a = self.to_dense()
        off_b, dense_b = other.to_dense()
        return LaurentPoly.from_dense(dense_mul(dense_a, dense_b), off_a + off_b)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> LaurentPoly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = LaurentPoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int | Fraction) and not isinstance(other, bool):
            return self._terms == LaurentPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def monic(self) -> LaurentPoly:
        if not self._terms:
            raise ValueError("the zero polynomial has no monic form")
        lead = self.leading_coefficient
        return LaurentPoly._wrap({e: _exact_div(c, lead) for e, c in self._terms.items()})

    def evaluate(self, x: Any) -> Any:
        """Evaluates at x; x may be an int, Fraction or an mpmath number."""
        total: Any = 0
        for exponent, c in self._terms.items():
            if exponent >= 0:
                total += c * x**exponent
            else:
                total += c / x ** (-exponent)
        return total

    def __reduce__(self) -> tuple[Any, ...]:
        return (LaurentPoly, (dict(self._terms),))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exponent, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            magnitude = -c if c < 0 else c
            if exponent == 0:
                body = str(magnitude)
            else:
                power = "q" if exponent == 1 else f"q^{exponent}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def divrem(p: LaurentPoly, m: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Divides P by M with remainder over the rationals.

    Args:
      p: A genuine polynomial (no negative exponents).
      m: A nonzero genuine polynomial.

    Returns:
      (quotient, remainder) with P = quotient*M + remainder, deg(remainder) < deg(M).

    Raises:
      ZeroDivisionError: If M is zero.
      ValueError: If either argument has negative exponents.
    """
    if m.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quotient, remainder = dense_divrem(p.polynomial_coefficients(), m.polynomial_coefficients())
    return LaurentPoly.from_dense(quotient), LaurentPoly.from_dense(remainder)


def clear_q_power(p: LaurentPoly) -> LaurentPoly:
    """Divides out the largest power of q dividing P (a unit modulo every Phi_n)."""
    if p.is_zero():
        return p
    return p.shift(-p.min_exp)


@lru_cache(maxsize=None)
def _cyclotomic_dense(n: int) -> tuple[int, ...]:
    dense: list[Coefficient] = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            dense, remainder = dense_divrem(dense, list(_cyclotomic_dense(d)))
            if any(remainder):
                raise ArithmeticError(f"inexact division while building Phi_{n}")
    return tuple(int(c) for c in dense)


def cyclotomic(n: int) -> LaurentPoly:
    """Returns the n-th cyclotomic polynomial Phi_n(q).

    Raises:
      ValueError: If n < 1.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("cyclotomic index must be a positive integer")
    return LaurentPoly.from_dense(_cyclotomic_dense(n))


def precompute_cyclotomics(indices: Iterable[int]) -> None:
    """Fills the cyclotomic cache before work is fanned out to workers."""
    for n in sorted(set(indices)):
        cyclotomic(n)


def poly_gcd(p: LaurentPoly, m: LaurentPoly) -> LaurentPoly:
    """Monic gcd over the rationals, ignoring powers of q.

    Raises:
      ValueError: If both inputs are zero.
    """
    if p.is_zero() and m.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a = clear_q_power(p).polynomial_coefficients()
    b = clear_q_power(m).polynomial_coefficients()
    if len(a) < len(b):
        a, b = b, a
    while b:
        remainder = dense_rem(a, b)
        while remainder and not remainder[-1]:
            remainder.pop()
        a, b = b, remainder
    return LaurentPoly.from_dense(a).monic()


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """A quotient numerator/denominator of Laurent polynomials.

    The pair is not reduced; equality is decided by cross-multiplication.
    """

    numerator: LaurentPoly
    denominator: LaurentPoly

    def __post_init__(self) -> None:
        if self.denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    @classmethod
    def from_poly(cls, poly: LaurentPoly) -> RationalFunction:
        return cls(poly, LaurentPoly.one())

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            other = RationalFunction.from_poly(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: RationalFunction) -> RationalFunction:
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return self + (-other)

    def __mul__(self, other: RationalFunction | LaurentPoly) -> RationalFunction:
        if isinstance(other, LaurentPoly):
            return RationalFunction(self.numerator * other, self.denominator)
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def __truediv__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def reciprocal(self) -> RationalFunction:
        return RationalFunction(self.denominator, self.numerator)

    def __repr__(self) -> str:
        return f"RationalFunction(({self.numerator}) / ({self.denominator}))"


@dataclass(frozen=True)
class TruncatedSeries:
    """Formal Laurent series known exactly through q^order.

    ``coefficients[i]`` is the coefficient of q^(offset + i) and the tuple always
    covers offset..order. Precision rules, with v the exponent of the first
    nonzero coefficient:

    - sum: valid to min(order_a, order_b);
    - product: valid to min(order_a + v_b, order_b + v_a);
    - inverse: valid to order - 2v;
    - multiplying or dividing by an exact binomial 1 -/+ q^t (t > 0) keeps order.
    """

    offset: int
    coefficients: tuple[Coefficient, ...]
    order: int

    def __post_init__(self) -> None:
        expected = max(0, self.order - self.offset + 1)
        if len(self.coefficients) != expected:
            raise ValueError(f"series needs {expected} coefficients, got {len(self.coefficients)}")

    @classmethod
    def build(cls, offset: int, coefficients: Iterable[Coefficient], order: int) -> TruncatedSeries:
        values = [_clean(c) for c in coefficients]
        needed = max(0, order - offset + 1)
        values = (values + [0] * needed)[:needed]
        return cls(offset, tuple(values), order)

    @classmethod
    def from_poly(cls, poly: LaurentPoly, order: int) -> TruncatedSeries:
        offset = poly.min_exp if poly else 0
        return cls.build(offset, [poly.coefficient(e) for e in range(offset, order + 1)], order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.build(0, [1], order)

    def valuation(self) -> int:
        """Exponent of the first nonzero coefficient, or order + 1 if none is known."""
        for i, c in enumerate(self.coefficients):
            if c:
                return self.offset + i
        return self.order + 1

    def normalized(self) -> TruncatedSeries:
        """Drops leading zero coefficients so offset equals the valuation."""
        v = self.valuation()
        if v == self.offset:
            return self
        return TruncatedSeries(v, self.coefficients[v - self.offset :], self.order)

    def coefficient(self, exponent: int) -> Coefficient:
        if exponent > self.order:
            raise ValueError(f"coefficient of q^{exponent} is beyond the truncation order {self.order}")
        if exponent < self.offset:
            return 0
        return self.coefficients[exponent - self.offset]

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries.build(self.offset, self.coefficients, order)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly.from_dense(self.coefficients, self.offset)

    def shift(self, k: int) -> TruncatedSeries:
        """Multiplies by q^k."""
        return TruncatedSeries(self.offset + k, self.coefficients, self.order + k)

    def scale(self, factor: Coefficient) -> TruncatedSeries:
        return TruncatedSeries(self.offset, tuple(_clean(c * factor) for c in self.coefficients), self.order)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        order = min(self.order, other.order)
        offset = min(self.offset, other.offset)
        values = [0] * max(0, order - offset + 1)
        for series in (self, other):
            for i, c in enumerate(series.coefficients):
                e = series.offset + i
                if e <= order:
                    values[e - offset] += c
        return TruncatedSeries.build(offset, values, order)

    def __neg__(self) -> TruncatedSeries:
        return self.scale(-1)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        a, b = self.normalized(), other.normalized()
        va, vb = a.offset, b.offset
        order = min(a.order + vb, b.order + va)
        offset = va + vb
        count = max(0, order - offset + 1)
        product = dense_mul(list(a.coefficients[:count]), list(b.coefficients[:count]))
        return TruncatedSeries.build(offset, product[:count], order)

    def mul_binomial(self, t: int, negated: bool = False, power: int = 1) -> TruncatedSeries:
        """Multiplies by (1 - q^t)^power (or (1 + q^t)^power), t > 0."""
        if t <= 0:
            raise ValueError("binomial exponent must be positive")
        sign = 1 if negated else -1
        values = list(self.coefficients)
        for _ in range(power):
            for i in range(len(values) - 1, t - 1, -1):
                values[i] += sign * values[i - t]
        return TruncatedSeries(self.offset, tuple(_clean(c) for c in values), self.order)

    def div_binomial(self, t: int, negated: bool = False, power: int = 1) -> TruncatedSeries:
        """Divides by (1 - q^t)^power (or (1 + q^t)^power), t > 0."""
        if t <= 0:
            raise ValueError("binomial exponent must be positive")
        sign = -1 if negated else 1
        values = list(self.coefficients)
        for _ in range(power):
            for i in range(t, len(values)):
                values[i] += sign * values[i - t]
        return TruncatedSeries(self.offset, tuple(_clean(c) for c in values), self.order)

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse, valid to order - 2v.

        Raises:
          ZeroDivisionError: If no nonzero coefficient is known.
        """
        series = self.normalized()
        if not series.coefficients:
            raise ZeroDivisionError("series is zero to its truncation order")
        v = series.offset
        unit = series.coefficients
        lead = unit[0]
        order = series.order - 2 * v
        count = max(0, order + v + 1)
        inverse: list[Coefficient] = []
        for j in range(count):
            acc: Coefficient = 1 if j == 0 else 0
            for i in range(1, min(j, len(unit) - 1) + 1):
                if unit[i]:
                    acc -= unit[i] * inverse[j - i]
            inverse.append(_exact_div(acc, lead))
        return TruncatedSeries.build(-v, inverse, order)

    def __truediv__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self * other.inverse()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.order == b.order and a.offset == b.offset and a.coefficients == b.coefficients

    def __hash__(self) -> int:
        n = self.normalized()
        return hash((n.offset, n.coefficients, n.order))

    def __str__(self) -> str:
        return f"{self.to_poly()} + O(q^{self.order + 1})"


def series_of(rf: RationalFunction, order: int) -> TruncatedSeries:
    """Expands a rational function as a Laurent series through q^order.

    Raises:
      ZeroDivisionError: If the denominator is identically zero.
    """
    num, den = rf.numerator, rf.denominator
    if den.is_zero():
        raise ZeroDivisionError("denominator is identically zero")
    v = den.min_exp
    unit = den.shift(-v).polynomial_coefficients()
    if num.is_zero():
        return TruncatedSeries.build(order + 1, [], order)
    start = num.min_exp - v
    count = max(0, order - start + 1)
    num_offset, num_dense = num.to_dense()
    lead = unit[0]
    result: list[Coefficient] = []
    for j in range(count):
        acc: Coefficient = num_dense[j] if j < len(num_dense) else 0
        for i in range(1, min(j, len(unit) - 1) + 1):
            if unit[i]:
                acc -= unit[i] * result[j - i]
        result.append(_exact_div(acc, lead))
    return TruncatedSeries.build(start, result, order)


def infinite_pochhammer_series(a: int, d: int, order: int) -> TruncatedSeries:
    """Truncates (q^a; q^d)_infinity through q^order.

    Raises:
      ValueError: If a < 1 or d < 1 (the product is not a formal series).
    """
    if a < 1:
        raise ValueError(f"(q^{a}; q^{d})_inf is not a formal power series; need a >= 1")
    if d < 1:
        raise ValueError("step d must be positive")
    series = TruncatedSeries.one(order)
    t = a
    while t <= order:
        series = series.mul_binomial(t)
        t += d
    return series

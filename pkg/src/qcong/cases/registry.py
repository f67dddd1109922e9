"""Registry of every checkable statement.

A :class:`CongruenceCase` pairs named integer parameters with an ordered list
of admissibility conditions and a builder. The builder turns an admissible
parameter assignment into one of four instance types, and the driver decides
each instance with the matching exact procedure.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from qcong.cases import integer, invariants
from qcong.cases.integer import IntegerInstance
from qcong.cases.invariants import family_spec
from qcong.congruence import ModulusSpec
from qcong.exact import is_prime
from qcong.qpoly import LaurentPoly, RationalFunction, cyclotomic
from qcong.qseries import (
    BracketFactor,
    QPochhammerFactor,
    QPowerFactor,
    TruncatedSumSpec,
    gaussian_binomial,
    pochhammer,
    q_integer,
)
from qcong.types import CaseKind

logger = logging.getLogger(__name__)

Params = Mapping[str, int]


class InadmissibleParametersError(ValueError):
    """Parameters violate one of the case's conditions."""

    def __init__(self, case_id: str, condition: str, params: Params) -> None:
        self.case_id = case_id
        self.condition = condition
        self.params = dict(params)
        rendered = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        super().__init__(f"{case_id} ({rendered}): requires {condition}")


class UnknownCaseError(KeyError):
    """No case is registered under the requested id."""


@dataclass(frozen=True)
class QCongruenceInstance:
    """sum(spec) == rhs modulo the modulus."""

    spec: TruncatedSumSpec
    rhs: LaurentPoly
    modulus: ModulusSpec


@dataclass(frozen=True)
class ClosedFormInstance:
    """sum(spec) equals every closed form exactly.

    With ``vanishes_modulo`` the first closed form must also be == 0 modulo it.
    """

    spec: TruncatedSumSpec
    closed_forms: tuple[RationalFunction, ...]
    vanishes_modulo: ModulusSpec | None = None


@dataclass(frozen=True)
class InvariantInstance:
    check: Callable[[], bool]
    description: str


CaseInstance = QCongruenceInstance | ClosedFormInstance | IntegerInstance | InvariantInstance


@dataclass(frozen=True)
class Condition:
    """One admissibility requirement with the text reported when it is violated."""

    text: str
    predicate: Callable[[Params], bool]


@dataclass(frozen=True)
class CongruenceCase:
    id: str
    kind: CaseKind
    title: str
    parameters: tuple[str, ...]
    conditions: tuple[Condition, ...]
    builder: Callable[[Params], CaseInstance]
    conjecture: bool = False
    reference: str = ""

    @property
    def condition(self) -> str:
        return "; ".join(c.text for c in self.conditions) or "none"

    def violation(self, params: Params) -> str | None:
        """Returns the first violated condition, or None when admissible. Never raises."""
        missing = [name for name in self.parameters if name not in params]
        if missing:
            return f"parameters {', '.join(missing)} must be given"
        unknown = sorted(set(params) - set(self.parameters))
        if unknown:
            return f"unknown parameters {', '.join(unknown)}"
        for condition in self.conditions:
            try:
                ok = bool(condition.predicate(params))
            except Exception:  # noqa: BLE001 - admissibility must stay total
                ok = False
            if not ok:
                return condition.text
        return None

    def build(self, params: Params) -> CaseInstance:
        """Builds the instance for admissible parameters.

        Raises:
          InadmissibleParametersError: Naming the violated condition.
        """
        reason = self.violation(params)
        if reason is not None:
            raise InadmissibleParametersError(self.id, reason, params)
        return self.builder(params)


# Condition helpers ----------------------------------------------------------


def when(text: str, predicate: Callable[[Params], bool]) -> Condition:
    return Condition(text, predicate)


def odd(name: str, low: int) -> Condition:
    return when(f"{name} odd, {name} >= {low}", lambda p: p[name] % 2 == 1 and p[name] >= low)


def even(name: str, low: int) -> Condition:
    return when(f"{name} even, {name} >= {low}", lambda p: p[name] % 2 == 0 and p[name] >= low)


def at_least(name: str, low: int) -> Condition:
    return when(f"{name} >= {low}", lambda p: p[name] >= low)


def prime(name: str = "p", low: int = 2) -> Condition:
    if low <= 2:
        return when(f"{name} prime", lambda p: is_prime(p[name]))
    return when(f"{name} prime, {name} >= {low}", lambda p: is_prime(p[name]) and p[name] >= low)


COPRIME_DR = when("gcd(d, r) = 1", lambda p: gcd(p["d"], p["r"]) == 1)
N_MINUS_R = when("n == -r (mod d)", lambda p: (p["n"] + p["r"]) % p["d"] == 0)
N_BOUND = when("n >= max(r, d - r)", lambda p: p["n"] >= max(p["r"], p["d"] - p["r"]))
N_MINUS_ONE = when("n == -1 (mod d)", lambda p: (p["n"] + 1) % p["d"] == 0)
N_PLUS_ONE = when("n == 1 (mod d)", lambda p: (p["n"] - 1) % p["d"] == 0)


# Shared builders ------------------------------------------------------------


def _bracket_pow(n: int, e: int) -> LaurentPoly:
    return q_integer(n) ** e


def _base_two_spec(sign: int, count: int) -> TruncatedSumSpec:
    """sum [4k + sign] (q^sign; q^2)_k^2 / (q^2; q^2)_k^2 q^(-sign k)."""
    return TruncatedSumSpec(
        pochhammers=(QPochhammerFactor(sign, 2, 2), QPochhammerFactor(2, 2, -2)),
        qpower=QPowerFactor(beta=-sign),
        k_from=0,
        k_to=count - 1,
        bracket=BracketFactor(4, sign),
    )


def _two_nk_modulus(d: int, n: int) -> ModulusSpec:
    return ModulusSpec.phi((n, 2), (d * n - n, 1))


def _wide_spec(d: int, sign: int, count: int, beta: int) -> TruncatedSumSpec:
    """sum [2dk + sign] (q^sign; q^d)_k^(2d) / (q^d; q^d)_k^(2d) q^(beta k)."""
    return TruncatedSumSpec(
        pochhammers=(QPochhammerFactor(sign, d, 2 * d), QPochhammerFactor(d, d, -2 * d)),
        qpower=QPowerFactor(beta=beta),
        k_from=0,
        k_to=count - 1,
        bracket=BracketFactor(2 * d, sign),
    )


# Builders: d = 2 ------------------------------------------------------------


def _t1a(p: Params) -> CaseInstance:
    n = p["n"]
    return QCongruenceInstance(
        _base_two_spec(1, n), _bracket_pow(n, 2).shift(1), ModulusSpec(((n, 1),), ((n, 2),))
    )


def _t1b(p: Params) -> CaseInstance:
    n = p["n"]
    return QCongruenceInstance(_base_two_spec(-1, n), -_bracket_pow(n, 2), ModulusSpec(((n, 1),), ((n, 2),)))


def _t1a_half(p: Params) -> CaseInstance:
    n = p["n"]
    return QCongruenceInstance(
        _base_two_spec(1, (n - 1) // 2 + 1), _bracket_pow(n, 2).shift(1), ModulusSpec(((n, 1),), ((n, 2),))
    )


def _t1b_half(p: Params) -> CaseInstance:
    n = p["n"]
    return QCongruenceInstance(
        _base_two_spec(-1, (n + 1) // 2 + 1), -_bracket_pow(n, 2), ModulusSpec(((n, 1),), ((n, 2),))
    )


def _cf1(p: Params) -> CaseInstance:
    n = p["n"]
    square = _bracket_pow(n, 2)
    first = RationalFunction(
        (square * LaurentPoly.binomial(n, negated=True) ** 2 * pochhammer(1, 2, n) ** 2).shift(1 - n),
        pochhammer(2, 2, n) ** 2,
    )
    second = RationalFunction(
        (square * gaussian_binomial(2 * n - 1, n - 1) ** 2).shift(1 - n),
        pochhammer(1, 1, n - 1, negated=True) ** 4,
    )
    return ClosedFormInstance(_base_two_spec(1, n), (first, second))


def _cf2(p: Params) -> CaseInstance:
    n = p["n"]
    closed = RationalFunction(
        -(_bracket_pow(n, 2) * LaurentPoly.binomial(n, negated=True) ** 2 * pochhammer(-1, 2, n) ** 2).shift(n),
        pochhammer(2, 2, n) ** 2,
    )
    return ClosedFormInstance(_base_two_spec(-1, n), (closed,))


# Builders: d-families -------------------------------------------------------


def _t2(p: Params) -> CaseInstance:
    d, n = p["d"], p["n"]
    return QCongruenceInstance(family_spec(d, 1, n), LaurentPoly.zero(), ModulusSpec.phi((n, 2)))


def _t3(p: Params) -> CaseInstance:
    d, n = p["d"], p["n"]
    return QCongruenceInstance(family_spec(d, -1, n), LaurentPoly.zero(), ModulusSpec.phi((n, 2)))


def _t4(p: Params) -> CaseInstance:
    d, n = p["d"], p["n"]
    return QCongruenceInstance(family_spec(d, 1, n), LaurentPoly.zero(), _two_nk_modulus(d, n))


def _t5(p: Params) -> CaseInstance:
    d, r, n = p["d"], p["r"], p["n"]
    return QCongruenceInstance(family_spec(d, r, n), LaurentPoly.zero(), ModulusSpec.phi((n, 2)))


def _t5_6phi5(p: Params) -> CaseInstance:
    r, n = p["r"], p["n"]
    top = (3 * n - r) // 4
    spec = TruncatedSumSpec(
        pochhammers=(
            QPochhammerFactor(r, 4, 2),
            QPochhammerFactor(r + 3 * n, 4, 1),
            QPochhammerFactor(r - 3 * n, 4, 1),
            QPochhammerFactor(4, 4, -2),
            QPochhammerFactor(4 - 3 * n, 4, -1),
            QPochhammerFactor(4 + 3 * n, 4, -1),
        ),
        qpower=QPowerFactor(beta=4 - 2 * r),
        k_from=0,
        k_to=top,
        bracket=BracketFactor(8, r),
    )
    closed = RationalFunction(
        q_integer(r) * pochhammer(r + 4, 4, top) * pochhammer(4 - 3 * n - r, 4, top),
        pochhammer(4, 4, top) * pochhammer(4 - 3 * n, 4, top),
    )
    return ClosedFormInstance(spec, (closed,), ModulusSpec.phi((n, 2)))


def _t6(p: Params) -> CaseInstance:
    d, r, n = p["d"], p["r"], p["n"]
    return QCongruenceInstance(family_spec(d, r, n, scale=2), LaurentPoly.zero(), ModulusSpec.phi((n, 2)))


def _t7(p: Params) -> CaseInstance:
    d, n = p["d"], p["n"]
    return QCongruenceInstance(family_spec(d, -1, n), LaurentPoly.zero(), _two_nk_modulus(d, n))


def _odd1(p: Params) -> CaseInstance:
    d, n = p["d"], p["n"]
    power = 2 if (n + 1) % d == 0 else 3
    return QCongruenceInstance(family_spec(d, 1, n), LaurentPoly.zero(), ModulusSpec.phi((n, power)))


def _odd2(p: Params) -> CaseInstance:
    d, n = p["d"], p["n"]
    power = 2 if (n - 1) % d == 0 else 3
    return QCongruenceInstance(family_spec(d, -1, n), LaurentPoly.zero(), ModulusSpec.phi((n, power)))


# Builders: q-analogue conjectures ------------------------------------------


def _qconj1(p: Params) -> CaseInstance:
    n = p["n"]
    spec = _wide_spec(n + 1, 1, n, (n + 1) * (n - 1))
    return QCongruenceInstance(spec, LaurentPoly.zero(), ModulusSpec(((n, 2), (n * n, 1)), ((n, 2),)))


def _qconj2(p: Params) -> CaseInstance:
    m = p["p"]
    spec = _wide_spec(m + 1, 1, m, (m + 1) * (m - 1))
    factor = Fraction(-(2 * m + 1) * (m + 1) ** 2 * m * (m - 1), 72)
    rhs = (LaurentPoly.binomial(1) ** 2 * _bracket_pow(m, 4) * cyclotomic(m * m)).shift(1).scale(factor)
    return QCongruenceInstance(spec, rhs, ModulusSpec(((m * m, 1),), ((m, 5),)))


def _qconj3(p: Params) -> CaseInstance:
    n = p["n"]
    spec = _wide_spec(n - 1, -1, n, (n - 1) ** 2)
    return QCongruenceInstance(spec, LaurentPoly.zero(), ModulusSpec(((n, 2),), ((n, 2),)))


def _qconj4(p: Params) -> CaseInstance:
    m = p["p"]
    spec = _wide_spec(m - 1, -1, m, (m - 1) ** 2)
    factor = Fraction((2 * m - 3) * (m - 1) * (m - 2) ** 2 * (m - 3), 6)
    rhs = (LaurentPoly.binomial(1) ** 2 * _bracket_pow(m, 4)).scale(factor)
    return QCongruenceInstance(spec, rhs, ModulusSpec(bracket_powers=((m, 5),)))


# Builders: invariants -------------------------------------------------------


def _invariant(description: str, check: Callable[[], bool]) -> InvariantInstance:
    return InvariantInstance(check, description)


def _inv_antisym(p: Params) -> CaseInstance:
    return _invariant("paired terms cancel modulo Phi_(dn-n)", lambda: invariants.antisymmetry_check(p["d"], p["n"]))


def _inv_trunc(p: Params) -> CaseInstance:
    return _invariant(
        "tail terms vanish modulo Phi_(dn-n)", lambda: invariants.truncation_equivalence_check(p["d"], p["n"])
    )


def _inv_ratio(p: Params) -> CaseInstance:
    return _invariant("Pochhammer ratio modulo Phi_(dn-n)", lambda: invariants.ratio_congruence_check(p["d"], p["n"]))


def _inv_lemma1(p: Params) -> CaseInstance:
    return _invariant("least k with n | 2r + kd", lambda: invariants.lemma_one_check(p["d"], p["r"], p["a"]))


def _inv_modsq(p: Params) -> CaseInstance:
    return _invariant(
        "shifted Pochhammer pair modulo Phi_n^2",
        lambda: invariants.mod_square_grid(p["r"], p["alpha"], p["n"], p["d"]),
    )


def _inv_qbinom(p: Params) -> CaseInstance:
    return _invariant("[2n-1 choose n-1] == 1 mod Phi_n", lambda: invariants.central_binomial_check(p["n"]))


def _inv_negq(p: Params) -> CaseInstance:
    return _invariant("(-q;q)_(n-1) == 1 mod Phi_n", lambda: invariants.negative_pochhammer_check(p["n"]))


def _inv_negq_half(p: Params) -> CaseInstance:
    return _invariant(
        "(-q;q)_((n-1)/2)^2 == q^((n^2-1)/8) mod Phi_n",
        lambda: invariants.negative_pochhammer_half_check(p["n"]),
    )


def _inv_cyclo(p: Params) -> CaseInstance:
    return _invariant("prod_{m | n} Phi_m = q^n - 1", lambda: invariants.cyclotomic_product_check(p["n"]))


# Registry --------------------------------------------------------------------

Q = CaseKind.Q_CONGRUENCE
Z = CaseKind.INTEGER_CONGRUENCE
CF = CaseKind.CLOSED_FORM
INV = CaseKind.INVARIANT

_ODD_N = odd("n", 3)

BUILTIN_CASES: tuple[CongruenceCase, ...] = (
    CongruenceCase(
        "T1a", Q, "sum [4k+1] (q;q^2)_k^2/(q^2;q^2)_k^2 q^-k == q[n]^2 mod [n]^2 Phi_n", ("n",), (_ODD_N,), _t1a,
        reference="base-2 family, r = 1",
    ),
    CongruenceCase(
        "T1b", Q, "sum [4k-1] (q^-1;q^2)_k^2/(q^2;q^2)_k^2 q^k == -[n]^2 mod [n]^2 Phi_n", ("n",), (_ODD_N,), _t1b,
        reference="base-2 family, r = -1",
    ),
    CongruenceCase(
        "T1a-half", Q, "T1a summed to (n-1)/2", ("n",), (_ODD_N,), _t1a_half, reference="half-range companion of T1a"
    ),
    CongruenceCase(
        "T1b-half", Q, "T1b summed to (n+1)/2", ("n",), (_ODD_N,), _t1b_half, reference="half-range companion of T1b"
    ),
    CongruenceCase(
        "CF1", CF, "closed forms of the T1a sum", ("n",), (at_least("n", 1),), _cf1, reference="induction on n"
    ),
    CongruenceCase(
        "CF2", CF, "closed form of the T1b sum", ("n",), (at_least("n", 1),), _cf2, reference="induction on n"
    ),
    CongruenceCase(
        "T2", Q, "sum [2dk+1] (q;q^d)_k^d/(q^d;q^d)_k^d q^(d(d-3)k/2) == 0 mod Phi_n^2", ("d", "n"),
        (even("d", 4), at_least("n", 1), N_MINUS_ONE), _t2, reference="even d, r = 1",
    ),
    CongruenceCase(
        "T3", Q, "sum [2dk-1] (q^-1;q^d)_k^d/(q^d;q^d)_k^d q^(d(d-1)k/2) == 0 mod Phi_n^2", ("d", "n"),
        (even("d", 4), at_least("n", 2), N_PLUS_ONE), _t3, reference="even d, r = -1",
    ),
    CongruenceCase(
        "T4", Q, "T2 sum == 0 mod Phi_n^2 Phi_(dn-n)", ("d", "n"),
        (at_least("d", 4), at_least("n", 1), N_MINUS_ONE), _t4, reference="r = 1 with the extra Phi_(dn-n) factor",
    ),
    CongruenceCase(
        "T5", Q, "sum [2dk+r] (q^r;q^d)_k^d/(q^d;q^d)_k^d q^(d(d-r-2)k/2) == 0 mod Phi_n^2", ("d", "r", "n"),
        (even("d", 4), COPRIME_DR, at_least("n", 2), N_MINUS_R, N_BOUND), _t5, reference="even d, general r",
    ),
    CongruenceCase(
        "T5-6PHI5", CF, "reduced d = 4 sum equals a 6phi5 product divisible by Phi_n^2", ("r", "n"),
        (
            when("r odd", lambda p: p["r"] % 2 == 1),
            odd("n", 3),
            when("n == -r (mod 4)", lambda p: (p["n"] + p["r"]) % 4 == 0),
            when("n >= max(r, 4 - r)", lambda p: p["n"] >= max(p["r"], 4 - p["r"])),
        ),
        _t5_6phi5, reference="terminating 6phi5 step for d = 4",
    ),
    CongruenceCase(
        "T6", Q, "sum [2dk+r]_{q^2} (q^2r;q^2d)_k^d/(q^2d;q^2d)_k^d q^(d(d-r-2)k) == 0 mod Phi_n^2", ("d", "r", "n"),
        (odd("d", 5), when("r even", lambda p: p["r"] % 2 == 0), COPRIME_DR, odd("n", 3), N_MINUS_R, N_BOUND), _t6,
        reference="odd d, even r, base q^2",
    ),
    CongruenceCase(
        "T7", Q, "T3 sum == 0 mod Phi_n^2 Phi_(dn-n)", ("d", "n"),
        (at_least("d", 3), at_least("n", 2), N_PLUS_ONE), _t7, reference="r = -1 with the extra Phi_(dn-n) factor",
    ),
    CongruenceCase(
        "ODD1", Q, "odd-d T2 sum: Phi_n^2 when n == -1, Phi_n^3 when 2n == -1 (mod d)", ("d", "n"),
        (
            odd("d", 5),
            at_least("n", 1),
            when("n == -1 or 2n == -1 (mod d)", lambda p: (p["n"] + 1) % p["d"] == 0 or (2 * p["n"] + 1) % p["d"] == 0),
        ),
        _odd1, reference="known result for odd d",
    ),
    CongruenceCase(
        "ODD2", Q, "odd-d T3 sum: Phi_n^2 when n == 1, Phi_n^3 when 2n == 1 (mod d)", ("d", "n"),
        (
            odd("d", 3),
            at_least("n", 2),
            when("n == 1 or 2n == 1 (mod d)", lambda p: (p["n"] - 1) % p["d"] == 0 or (2 * p["n"] - 1) % p["d"] == 0),
        ),
        _odd2, reference="known result for odd d",
    ),
    CongruenceCase(
        "E2p2k", Z, "sum (2pk+2k+1) (1/(p+1))_k^(p+1)/k!^(p+1) == 0 mod p^3", ("p",), (prime("p", 3),),
        lambda p: integer.two_p_two_k(p["p"]), reference="q -> 1 limit of T4 at d = p + 1",
    ),
    CongruenceCase(
        "E2p2k-printed", Z, "sum (2p+2k+1) (1/(p+1))_k^(p+1)/k!^(p+1) == 0 mod p^3", ("p",), (prime("p", 3),),
        lambda p: integer.two_p_two_k(p["p"], printed=True), reference="variant weight 2p + 2k + 1",
    ),
    CongruenceCase(
        "SUN5", Z, "sum (1/(p+1))_k^(p+1)/k!^(p+1) == 0 mod p^5 (mod 27 at p = 3)", ("p",), (prime("p", 3),),
        lambda p: integer.plain_sum(p["p"]), reference="known mod p^5 congruence",
    ),
    CongruenceCase(
        "C5", Z, "sum k (1/(p+1))_k^(p+1)/k!^(p+1) == 0 mod p^3", ("p",), (prime("p", 3),),
        lambda p: integer.first_moment(p["p"]), reference="q -> 1 limit of T4, first moment",
    ),
    CongruenceCase(
        "GAO", Z, "sum k (1/(p+1))_k^(p+1)/k!^(p+1) == p^3/4 - p^4/8 mod p^5", ("p",), (prime("p", 5),),
        lambda p: integer.first_moment_refined(p["p"]), reference="refinement of C5 modulo p^5",
    ),
    CongruenceCase(
        "CONJ-A", Z, "sum k^r (k + 1/(p+1))^r (1/(p+1))_k^(p+1)/k!^(p+1) == 0 mod p^4", ("r", "p"),
        (at_least("r", 1), prime("p"), when("p > 2r + 1", lambda p: p["p"] > 2 * p["r"] + 1)),
        lambda p: integer.symmetric_moment(p["r"], p["p"]), conjecture=True, reference="first moment conjecture",
    ),
    CongruenceCase(
        "CONJ-B", Z, "p^r-term sum with a = (p^r-1)/(p^(r+1)-1) == 0 mod p^(2r+5)", ("p", "r"),
        (prime("p", 5), at_least("r", 1)),
        lambda p: integer.seventh_power_family(p["p"], p["r"]), conjecture=True, reference="mod p^7 conjecture",
    ),
    CongruenceCase(
        "CONJ-C", Z, "p^r-term sum with a = -1/(p^r-1) == 0 mod p^(2r+3)", ("p", "r"),
        (prime("p", 5), at_least("r", 1)),
        lambda p: integer.fifth_power_family(p["p"], p["r"]), conjecture=True, reference="mod p^5 conjecture",
    ),
    CongruenceCase(
        "QCONJ-1", Q, "sum [2nk+2k+1] (q;q^(n+1))_k^(2n+2)/(...) == 0 mod [n]^2 Phi_n^2 Phi_(n^2)", ("n",),
        (at_least("n", 2),), _qconj1, conjecture=True, reference="partial q-analogue of the mod p^7 conjecture",
    ),
    CongruenceCase(
        "QCONJ-2", Q, "prime-p q-analogue of the mod p^7 conjecture modulo [p]^5 Phi_(p^2)", ("p",), (prime(),),
        _qconj2, conjecture=True, reference="first basic hypergeometric supercongruence of its kind",
    ),
    CongruenceCase(
        "QCONJ-3", Q, "sum [2nk-2k-1] (q^-1;q^(n-1))_k^(2n-2)/(...) == 0 mod [n]^2 Phi_n^2", ("n",),
        (at_least("n", 2),), _qconj3, conjecture=True, reference="partial q-analogue of the mod p^5 conjecture",
    ),
    CongruenceCase(
        "QCONJ-4", Q, "prime-p q-analogue of the mod p^5 conjecture modulo [p]^5", ("p",), (prime(),),
        _qconj4, conjecture=True, reference="complete q-analogue of the mod p^5 conjecture",
    ),
    CongruenceCase(
        "INV-ANTISYM", INV, "paired summands cancel modulo Phi_(dn-n)", ("d", "n"),
        (at_least("d", 4), at_least("n", 1), N_MINUS_ONE), _inv_antisym,
    ),
    CongruenceCase(
        "INV-TRUNC", INV, "summands past (dn-n-1)/d vanish modulo Phi_(dn-n)", ("d", "n"),
        (at_least("d", 2), at_least("n", 1), N_MINUS_ONE), _inv_trunc,
    ),
    CongruenceCase(
        "INV-RATIO", INV, "(q;q^d)_K/(q^d;q^d)_K modulo Phi_(dn-n)", ("d", "n"),
        (at_least("d", 2), at_least("n", 1), N_MINUS_ONE), _inv_ratio,
    ),
    CongruenceCase(
        "INV-LEMMA1", INV, "least k > 0 with ad - r | 2r + kd is >= a(d-4)/2", ("d", "r", "a"),
        (
            at_least("d", 5),
            COPRIME_DR,
            at_least("a", 1),
            when("ad - r >= max(r, 1)", lambda p: p["a"] * p["d"] - p["r"] >= max(p["r"], 1)),
        ),
        _inv_lemma1,
    ),
    CongruenceCase(
        "INV-MODSQ", INV, "(q^(r-an), q^(r+an); q^d)_k == (q^r;q^d)_k^2 mod Phi_n^2 for k < n",
        ("r", "alpha", "n", "d"),
        (at_least("n", 1), at_least("d", 1)), _inv_modsq,
    ),
    CongruenceCase("INV-QBINOM", INV, "[2n-1 choose n-1] == 1 mod Phi_n", ("n",), (_ODD_N,), _inv_qbinom),
    CongruenceCase("INV-NEGQ", INV, "(-q;q)_(n-1) == 1 mod Phi_n", ("n",), (_ODD_N,), _inv_negq),
    CongruenceCase(
        "INV-NEGQ-HALF", INV, "(-q;q)_((n-1)/2)^2 == q^((n^2-1)/8) mod Phi_n", ("n",), (_ODD_N,), _inv_negq_half
    ),
    CongruenceCase("INV-CYCLO", INV, "prod_{m | n} Phi_m = q^n - 1", ("n",), (at_least("n", 1),), _inv_cyclo),
)


class CaseRegistry:
    """Ordered id -> case mapping; built-ins first, custom cases appended."""

    def __init__(self, cases: Iterable[CongruenceCase] = BUILTIN_CASES) -> None:
        self._cases: dict[str, CongruenceCase] = {}
        for case in cases:
            self.register(case)
        self._builtin = frozenset(self._cases)

    def register(self, case: CongruenceCase, replace: bool = False) -> None:
        """Adds a case.

        Raises:
          ValueError: If the id is taken and ``replace`` is False.
        """
        if case.id in self._cases and not replace:
            raise ValueError(f"case id {case.id!r} is already registered")
        self._cases[case.id] = case

    def register_custom(self, case: CongruenceCase) -> None:
        """Adds or replaces a custom case; built-in ids stay reserved.

        Raises:
          ValueError: If the id belongs to a built-in case.
        """
        if case.id in self._builtin:
            raise ValueError(f"case id {case.id!r} is reserved by a built-in case")
        self.register(case, replace=True)

    def get(self, case_id: str) -> CongruenceCase:
        """Raises UnknownCaseError for unregistered ids."""
        try:
            return self._cases[case_id]
        except KeyError:
            raise UnknownCaseError(case_id) from None

    def __contains__(self, case_id: object) -> bool:
        return case_id in self._cases

    def __iter__(self) -> Iterator[CongruenceCase]:
        return iter(self._cases.values())

    def __len__(self) -> int:
        return len(self._cases)

    def ids(self) -> list[str]:
        return list(self._cases)


REGISTRY = CaseRegistry()


def get_case(case_id: str) -> CongruenceCase:
    return REGISTRY.get(case_id)

"""Parameter grids run by ``qcong verify-all``.

A profile is a list of ``(case id, params)`` points. Grids are written as
ranges and filtered through each case's admissibility conditions, so a
profile never contains an inadmissible point.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence

from qcong.cases.registry import REGISTRY, CaseRegistry
from qcong.exact import primes_between
from qcong.types import Profile

Point = tuple[str, dict[str, int]]


def _odd(low: int, high: int) -> range:
    return range(low | 1, high + 1, 2)


def _grid(case_id: str, registry: CaseRegistry, **axes: Iterable[int]) -> list[Point]:
    case = registry.get(case_id)
    names = list(axes)
    points: list[Point] = []
    for values in itertools.product(*(list(axes[name]) for name in names)):
        params = dict(zip(names, values, strict=True))
        if case.violation(params) is None:
            points.append((case_id, params))
    return points


def _mod_square(registry: CaseRegistry, r: Iterable[int], n: Iterable[int]) -> list[Point]:
    # alpha runs over 1, 3 and d - 1 for each modulus step d
    points: list[Point] = []
    for d in (4, 6):
        alphas = sorted({1, 3, d - 1})
        points += _grid("INV-MODSQ", registry, r=list(r), alpha=alphas, n=list(n), d=(d,))
    return points


def _quick(registry: CaseRegistry) -> list[Point]:
    primes = primes_between(5, 13)
    odd_n = _odd(3, 31)
    points: list[Point] = []
    for case_id in ("T1a", "T1b", "CF1", "CF2", "T1a-half", "T1b-half"):
        points += _grid(case_id, registry, n=odd_n)
    for case_id in ("T2", "T3"):
        points += _grid(case_id, registry, d=(4, 6, 8), n=range(1, 50))
    for case_id in ("T4", "INV-ANTISYM", "INV-TRUNC", "INV-RATIO"):
        points += _grid(case_id, registry, d=(4, 5, 6, 7), n=range(1, 30))
    points += _grid("T5", registry, d=(4, 6), r=(1, 3, 5, -1), n=range(1, 36))
    points += _grid("T5-6PHI5", registry, r=(1, 3, -1), n=range(1, 36))
    points += _grid("T6", registry, d=(5, 7), r=(2, 4), n=range(1, 34))
    points += _grid("T7", registry, d=(3, 4, 5), n=range(1, 32))
    for case_id in ("ODD1", "ODD2"):
        points += _grid(case_id, registry, d=(5, 7), n=range(1, 30))
    for case_id in ("E2p2k", "SUN5", "C5", "GAO"):
        points += _grid(case_id, registry, p=primes)
    points += _grid("SUN5", registry, p=(3,))
    points += _grid("CONJ-A", registry, r=(1, 2), p=primes_between(3, 13))
    points += _grid("CONJ-B", registry, p=(5, 7), r=(1,)) + _grid("CONJ-B", registry, p=(5,), r=(2,))
    points += _grid("CONJ-C", registry, p=(5, 7), r=(1,)) + _grid("CONJ-C", registry, p=(5,), r=(2,))
    points += _grid("QCONJ-1", registry, n=range(2, 6))
    points += _grid("QCONJ-2", registry, p=(2, 3, 5))
    points += _grid("QCONJ-3", registry, n=range(2, 6))
    points += _grid("QCONJ-4", registry, p=(3, 5, 7))
    points += _grid("INV-CYCLO", registry, n=range(1, 61))
    points += _mod_square(registry, r=(-3, 1, 2, 5), n=range(2, 14))
    points += _grid("INV-LEMMA1", registry, d=(5, 6, 7), r=range(-7, 8), a=range(1, 5))
    for case_id in ("INV-QBINOM", "INV-NEGQ", "INV-NEGQ-HALF"):
        points += _grid(case_id, registry, n=odd_n)
    return points


def _full(registry: CaseRegistry) -> list[Point]:
    primes = primes_between(5, 23)
    odd_n = _odd(3, 61)
    points: list[Point] = []
    for case_id in ("T1a", "T1b", "CF1", "CF2", "T1a-half", "T1b-half"):
        points += _grid(case_id, registry, n=odd_n)
    for case_id in ("T2", "T3"):
        points += _grid(case_id, registry, d=(4, 6, 8, 10), n=range(1, 80))
    for case_id in ("T4", "INV-ANTISYM", "INV-TRUNC", "INV-RATIO"):
        points += _grid(case_id, registry, d=range(4, 10), n=range(1, 50))
    points += _grid("T5", registry, d=(4, 6, 8), r=range(-7, 8), n=range(1, 50))
    points += _grid("T5-6PHI5", registry, r=range(-7, 8, 2), n=range(1, 50))
    points += _grid("T6", registry, d=(5, 7, 9), r=(2, 4, 6, 8), n=range(1, 50))
    points += _grid("T7", registry, d=range(3, 9), n=range(1, 50))
    for case_id in ("ODD1", "ODD2"):
        points += _grid(case_id, registry, d=(3, 5, 7, 9), n=range(1, 50))
    for case_id in ("E2p2k", "SUN5", "C5", "GAO"):
        points += _grid(case_id, registry, p=primes)
    points += _grid("SUN5", registry, p=(3,))
    points += _grid("CONJ-A", registry, r=(1, 2, 3), p=primes_between(3, 23))
    points += _grid("CONJ-B", registry, p=primes_between(5, 13), r=(1,)) + _grid("CONJ-B", registry, p=(5, 7), r=(2,))
    points += _grid("CONJ-C", registry, p=primes_between(5, 13), r=(1,)) + _grid("CONJ-C", registry, p=(5, 7), r=(2,))
    points += _grid("QCONJ-1", registry, n=range(2, 8))
    points += _grid("QCONJ-2", registry, p=(2, 3, 5, 7))
    points += _grid("QCONJ-3", registry, n=range(2, 8))
    points += _grid("QCONJ-4", registry, p=(3, 5, 7, 11))
    points += _grid("INV-CYCLO", registry, n=range(1, 121))
    points += _mod_square(registry, r=range(-7, 8), n=range(2, 14))
    points += _grid("INV-LEMMA1", registry, d=range(5, 12), r=range(-11, 12), a=range(1, 8))
    for case_id in ("INV-QBINOM", "INV-NEGQ", "INV-NEGQ-HALF"):
        points += _grid(case_id, registry, n=odd_n)
    return points


def profile_points(profile: Profile, registry: CaseRegistry = REGISTRY) -> list[Point]:
    """Admissible points of a profile, in case-registration order and then grid order."""
    points = _quick(registry) if profile is Profile.QUICK else _full(registry)
    order = {case_id: index for index, case_id in enumerate(registry.ids())}
    return sorted(points, key=lambda point: order[point[0]])


def cases_in(points: Sequence[Point]) -> list[str]:
    """Distinct case ids in first-seen order."""
    return list(dict.fromkeys(case_id for case_id, _ in points))

"""Verification drivers: single points, families, profiles and grid scans.

Points are independent, so they can fan out over a process pool. Workers
receive only ``(case id, params)`` and look the case up in their own registry;
a custom case file is re-loaded in each worker through the pool initializer.
Results are reassembled in submission order.
"""

from __future__ import annotations

import concurrent.futures
import itertools
import logging
import time
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import TypeVar

from qcong.cases.integer import IntegerInstance
from qcong.cases.invariants import family_spec
from qcong.cases.registry import (
    COPRIME_DR,
    N_BOUND,
    N_MINUS_ONE,
    N_MINUS_R,
    N_PLUS_ONE,
    REGISTRY,
    CaseInstance,
    CaseRegistry,
    ClosedFormInstance,
    Condition,
    CongruenceCase,
    InadmissibleParametersError,
    InvariantInstance,
    QCongruenceInstance,
    at_least,
    odd,
    when,
)
from qcong.congruence import CongruenceVerdict, ModulusSpec, check_congruence, check_sum_congruence
from qcong.exact import INFINITY, Valuation
from qcong.models import CaseResult, ResultDetail, RunInfo, ScanPoint, ScanReport, ScanSummary, Timing
from qcong.oracle import DEFAULT_PRECISION, OraclePrecisionError, sum_oracle
from qcong.qpoly import LaurentPoly, precompute_cyclotomics
from qcong.qseries import TruncatedSumSpec, sum_over_common_denominator
from qcong.types import ScanFamily, Verdict

logger = logging.getLogger(__name__)

T = TypeVar("T")
Params = Mapping[str, int]


class RunInterrupted(Exception):
    """Raised on Ctrl-C; ``partial`` holds the results finished so far, in order."""

    def __init__(self, partial: list) -> None:
        super().__init__("run interrupted")
        self.partial = partial


@dataclass(frozen=True)
class VerifyOptions:
    oracle: bool = False
    precision: int = DEFAULT_PRECISION


# Deciding instances ---------------------------------------------------------------


def _power(value: Valuation) -> int | str:
    return "inf" if value is INFINITY else int(value)


def _degree(p: LaurentPoly) -> int:
    return 0 if p.is_zero() else p.degree


def _congruence_detail(verdict: CongruenceVerdict) -> ResultDetail:
    failing = verdict.failing_factor
    return ResultDetail(
        failing_factor=list(failing) if failing else None,
        degrees={f"Phi_{f.n}": f.ring_degree for f in verdict.factors},
        attained={f"Phi_{f.n}": _power(f.attained) for f in verdict.factors},
    )


def _oracle_outcome(instance: QCongruenceInstance, exact: CongruenceVerdict, precision: int) -> str:
    try:
        numeric = sum_oracle(instance.spec, instance.rhs, instance.modulus, precision)
    except OraclePrecisionError as exc:
        logger.warning("oracle ambiguous: %s", exc)
        return "ambiguous"
    if numeric.status is exact.status:
        return "agrees"
    logger.warning("oracle disagrees: exact %s, numeric %s", exact.status.value, numeric.status.value)
    return "disagrees"


def decide(instance: CaseInstance, options: VerifyOptions = VerifyOptions()) -> tuple[Verdict, ResultDetail]:
    """Runs the exact procedure that matches the instance type."""
    match instance:
        case QCongruenceInstance(spec=spec, rhs=rhs, modulus=modulus):
            verdict = check_sum_congruence(spec, rhs, modulus)
            detail = _congruence_detail(verdict)
            if options.oracle:
                detail.oracle = _oracle_outcome(instance, verdict, options.precision)
            return verdict.status, detail
        case ClosedFormInstance(spec=spec, closed_forms=closed_forms, vanishes_modulo=modulus):
            total = sum_over_common_denominator(spec)
            detail = ResultDetail(
                degrees={"numerator": _degree(total.numerator), "denominator": _degree(total.denominator)}
            )
            if not all(total == closed for closed in closed_forms):
                return Verdict.FAILS, detail
            if modulus is None:
                return Verdict.HOLDS, detail
            vanishing = check_congruence(closed_forms[0], LaurentPoly.zero(), modulus)
            detail.failing_factor = list(vanishing.failing_factor) if vanishing.failing_factor else None
            detail.attained = {f"Phi_{f.n}": _power(f.attained) for f in vanishing.factors}
            return vanishing.status, detail
        case IntegerInstance():
            detail = ResultDetail(sum=str(instance.value), valuation=_power(instance.valuation))
            return (Verdict.HOLDS if instance.holds else Verdict.FAILS), detail
        case InvariantInstance(check=check, description=description):
            if check():
                return Verdict.HOLDS, ResultDetail()
            return Verdict.FAILS, ResultDetail(reason=description)
    raise TypeError(f"unsupported instance {type(instance).__name__}")


def evaluate_case(
    case: CongruenceCase, params: Params, options: VerifyOptions = VerifyOptions()
) -> CaseResult:
    """Checks one point; inadmissible points and evaluation errors become verdicts."""
    start = time.perf_counter()
    params = dict(params)
    base = {"case": case.id, "params": params, "kind": case.kind, "conjecture": case.conjecture}
    reason = case.violation(params)
    if reason is not None:
        logger.warning("%s %s skipped: requires %s", case.id, params, reason)
        return CaseResult(**base, verdict=Verdict.INADMISSIBLE, detail=ResultDetail(reason=reason))
    try:
        verdict, detail = decide(case.builder(params), options)
    except (ValueError, ZeroDivisionError) as exc:
        logger.warning("%s %s undefined: %s", case.id, params, exc)
        verdict, detail = Verdict.UNDEFINED, ResultDetail(reason=str(exc))
    millis = int((time.perf_counter() - start) * 1000)
    if verdict is not Verdict.HOLDS:
        level = logging.WARNING if case.conjecture else logging.ERROR
        logger.log(level, "%s %s: %s", case.id, params, verdict.value)
    else:
        logger.debug("%s %s: holds in %d ms", case.id, params, millis)
    return CaseResult(**base, verdict=verdict, detail=detail, millis=millis)


def verify_case(
    case_id: str,
    params: Params,
    *,
    registry: CaseRegistry = REGISTRY,
    options: VerifyOptions = VerifyOptions(),
) -> CaseResult:
    """Verifies one registered case at one parameter point.

    Raises:
      UnknownCaseError: If the id is not registered.
      InadmissibleParametersError: If the parameters violate a condition.
    """
    case = registry.get(case_id)
    reason = case.violation(params)
    if reason is not None:
        raise InadmissibleParametersError(case.id, reason, params)
    return evaluate_case(case, params, options)


# Worker pool ---------------------------------------------------------------------


def _init_worker(cases_file: str | None) -> None:
    if cases_file is None:
        return
    from qcong.io import load_custom_cases

    load_custom_cases(cases_file, REGISTRY)


def _evaluate_point(case_id: str, params: dict[str, int], options: VerifyOptions) -> CaseResult:
    return evaluate_case(REGISTRY.get(case_id), params, options)


def run_ordered(
    tasks: Sequence[Callable[[], T]],
    workers: int = 1,
    cases_file: Path | None = None,
) -> list[T]:
    """Runs picklable zero-argument tasks, returning results in task order.

    Raises:
      RunInterrupted: On KeyboardInterrupt, carrying the finished prefix.
    """
    results: list[T | None] = [None] * len(tasks)
    if workers <= 1 or len(tasks) <= 1:
        try:
            for index, task in enumerate(tasks):
                results[index] = task()
        except KeyboardInterrupt:
            raise RunInterrupted([r for r in results if r is not None]) from None
        return [r for r in results if r is not None]
    initargs = (None if cases_file is None else str(cases_file),)
    executor = concurrent.futures.ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=initargs)
    try:
        futures = {executor.submit(task): index for index, task in enumerate(tasks)}
        for future in concurrent.futures.as_completed(futures):
            results[futures[future]] = future.result()
    except KeyboardInterrupt:
        executor.shutdown(wait=False, cancel_futures=True)
        raise RunInterrupted([r for r in results if r is not None]) from None
    executor.shutdown()
    return [r for r in results if r is not None]


def verify_points(
    points: Sequence[tuple[str, Params]],
    *,
    options: VerifyOptions = VerifyOptions(),
    workers: int = 1,
    cases_file: Path | None = None,
) -> list[CaseResult]:
    """Verifies (case id, params) points; unknown ids fail fast before any work."""
    for case_id, _ in points:
        REGISTRY.get(case_id)
    tasks = [partial(_evaluate_point, case_id, dict(params), options) for case_id, params in points]
    return run_ordered(tasks, workers, cases_file)


def expand_ranges(parameters: Sequence[str], ranges: Mapping[str, Sequence[int]]) -> list[dict[str, int]]:
    """Cartesian product of the ranges in parameter order.

    Raises:
      ValueError: If a parameter has no range or an unknown name is given.
    """
    unknown = sorted(set(ranges) - set(parameters))
    if unknown:
        raise ValueError(f"unknown parameters: {', '.join(unknown)}; expected {', '.join(parameters)}")
    missing = [name for name in parameters if name not in ranges]
    if missing:
        raise ValueError(f"missing values for: {', '.join(missing)}")
    axes = [list(ranges[name]) for name in parameters]
    return [dict(zip(parameters, values, strict=True)) for values in itertools.product(*axes)]


def verify_family(
    case_id: str,
    param_ranges: Mapping[str, Sequence[int]],
    *,
    registry: CaseRegistry = REGISTRY,
    options: VerifyOptions = VerifyOptions(),
    workers: int = 1,
    cases_file: Path | None = None,
) -> list[CaseResult]:
    """Verifies every point of a finite grid; inadmissible points are reported, not raised."""
    case = registry.get(case_id)
    points = expand_ranges(case.parameters, param_ranges)
    if registry is not REGISTRY:
        return [evaluate_case(case, params, options) for params in points]
    return verify_points([(case_id, p) for p in points], options=options, workers=workers, cases_file=cases_file)


# Scans ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanFamilySpec:
    parameters: tuple[str, ...]
    conditions: tuple[Condition, ...]
    spec: Callable[[Params], TruncatedSumSpec]

    def violation(self, params: Params) -> str | None:
        for condition in self.conditions:
            try:
                ok = condition.predicate(params)
            except Exception:  # noqa: BLE001
                ok = False
            if not ok:
                return condition.text
        return None


SCAN_FAMILIES: dict[ScanFamily, ScanFamilySpec] = {
    ScanFamily.NEW_D: ScanFamilySpec(
        ("d", "r", "n"),
        (at_least("d", 2), COPRIME_DR, at_least("n", 2), N_MINUS_R, N_BOUND),
        lambda p: family_spec(p["d"], p["r"], p["n"]),
    ),
    ScanFamily.NEW_ODD: ScanFamilySpec(
        ("d", "r", "n"),
        (odd("d", 3), when("r even", lambda p: p["r"] % 2 == 0), COPRIME_DR, odd("n", 3), N_MINUS_R, N_BOUND),
        lambda p: family_spec(p["d"], p["r"], p["n"], scale=2),
    ),
    ScanFamily.TWO_NK: ScanFamilySpec(
        ("d", "n"),
        (at_least("d", 2), at_least("n", 1), N_MINUS_ONE),
        lambda p: family_spec(p["d"], 1, p["n"]),
    ),
    ScanFamily.NEW_2: ScanFamilySpec(
        ("d", "n"),
        (at_least("d", 2), at_least("n", 2), N_PLUS_ONE),
        lambda p: family_spec(p["d"], -1, p["n"]),
    ),
}


@dataclass(frozen=True)
class ScanGrid:
    """A finite grid over one family, probing Phi_n^power."""

    family: ScanFamily
    ranges: dict[str, list[int]] = field(default_factory=dict)
    power: int = 2

    def points(self) -> list[dict[str, int]]:
        if any(not values for values in self.ranges.values()):
            return []
        return expand_ranges(SCAN_FAMILIES[self.family].parameters, self.ranges)


def scan_point(family: ScanFamily, params: dict[str, int], power: int) -> ScanPoint:
    """Checks sum == 0 (mod Phi_n^power) and records the power attained, probing one beyond."""
    start = time.perf_counter()
    entry = SCAN_FAMILIES[family]
    reason = entry.violation(params)
    if reason is not None:
        return ScanPoint(params=params, verdict=Verdict.INADMISSIBLE, reason=reason)
    n = params["n"]
    try:
        verdict = check_sum_congruence(entry.spec(params), LaurentPoly.zero(), ModulusSpec.phi((n, power)), extra=1)
    except (ValueError, ZeroDivisionError) as exc:
        return ScanPoint(params=params, verdict=Verdict.UNDEFINED, reason=str(exc))
    factor = verdict.factors[0]
    millis = int((time.perf_counter() - start) * 1000)
    logger.debug("scan %s %s: %s (attained %s)", family.value, params, verdict.status.value, factor.attained)
    attained = None if factor.status is Verdict.UNDEFINED else _power(factor.attained)
    return ScanPoint(params=params, verdict=verdict.status, attained=attained, millis=millis)


def scan(
    grid: ScanGrid,
    *,
    workers: int = 1,
    run: RunInfo | None = None,
) -> ScanReport:
    """Checks every grid point; inadmissible points are recorded with their reason.

    On Ctrl-C the report holds the points finished so far and is marked interrupted.
    """
    start = time.perf_counter()
    grid_points = grid.points()
    if workers > 1:
        # forked workers inherit the warm cache
        precompute_cyclotomics(p["n"] for p in grid_points if p["n"] >= 1)
    tasks = [partial(scan_point, grid.family, params, grid.power) for params in grid_points]
    interrupted = False
    try:
        points = run_ordered(tasks, workers)
    except RunInterrupted as exc:
        points, interrupted = exc.partial, True
    if run is None:
        from qcong import __version__

        run = RunInfo(command="scan", version=__version__)
    return ScanReport(
        run=run,
        family=grid.family,
        power=grid.power,
        grid={name: list(values) for name, values in grid.ranges.items()},
        points=points,
        summary=ScanSummary.from_points(points),
        timing=Timing(total_millis=int((time.perf_counter() - start) * 1000), interrupted=interrupted),
    )

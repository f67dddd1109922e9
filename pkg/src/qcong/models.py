"""Pydantic models for run reports, scan reports and custom case files."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from qcong.expressions import ExpressionError, parse_constraints, parse_expression
from qcong.types import CaseKind, ScanFamily, Verdict

NonEmptyStr = Annotated[str, Field(min_length=1)]
Expr = int | str
Power = int | Literal["inf"]


class QcongBaseModel(BaseModel):
    """Base model with strict validation."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")


# Reports ---------------------------------------------------------------------


class ResultDetail(QcongBaseModel):
    """Evidence behind one verdict."""

    failing_factor: list[int] | None = Field(
        default=None,
        description="[n, e] of the first cyclotomic power Phi_n^e that is not met.",
    )
    valuation: Power | None = Field(
        default=None,
        description="v_p(sum - target) for integer cases.",
    )
    degrees: dict[str, int] = Field(
        default_factory=dict,
        description="Polynomial degrees touched, keyed by what they measure.",
    )
    sum: str | None = Field(default=None, description="Exact rational sum for integer cases.")
    attained: dict[str, Power] | None = Field(
        default=None,
        description="Largest power of each Phi_n reached by the difference, beyond the denominator.",
    )
    reason: str | None = Field(default=None, description="Violated condition or evaluation error.")
    oracle: Literal["agrees", "disagrees", "ambiguous"] | None = Field(
        default=None,
        description="Outcome of the numeric root-of-unity cross-check.",
    )


class CaseResult(QcongBaseModel):
    """Verdict for one case at one parameter point."""

    case: NonEmptyStr = Field(description="Registered case id.")
    params: dict[str, int] = Field(description="Parameter assignment.")
    kind: CaseKind = Field(description="What the case asserts.")
    verdict: Verdict = Field(description="holds, fails, undefined or inadmissible.")
    conjecture: bool = Field(default=False, description="True for conjectural statements.")
    detail: ResultDetail = Field(default_factory=ResultDetail)
    millis: int = Field(default=0, ge=0, description="Wall time in milliseconds.")

    @property
    def theorem_failure(self) -> bool:
        return not self.conjecture and self.verdict in (Verdict.FAILS, Verdict.UNDEFINED)

    @property
    def conjecture_failure(self) -> bool:
        return self.conjecture and self.verdict in (Verdict.FAILS, Verdict.UNDEFINED)


class RunInfo(QcongBaseModel):
    command: str
    config: dict[str, Any] = Field(default_factory=dict)
    version: str


class Summary(QcongBaseModel):
    checked: int = 0
    holds: int = 0
    fails: int = 0
    undefined: int = 0
    inadmissible: int = 0
    conjecture_failures: int = 0

    @classmethod
    def from_results(cls, results: Iterable[CaseResult]) -> Summary:
        results = list(results)
        counts = Counter(r.verdict for r in results)
        return cls(
            checked=len(results) - counts[Verdict.INADMISSIBLE],
            holds=counts[Verdict.HOLDS],
            fails=counts[Verdict.FAILS],
            undefined=counts[Verdict.UNDEFINED],
            inadmissible=counts[Verdict.INADMISSIBLE],
            conjecture_failures=sum(1 for r in results if r.conjecture_failure),
        )


class Timing(QcongBaseModel):
    total_millis: int = Field(default=0, ge=0)
    interrupted: bool = False


class RunReport(QcongBaseModel):
    """JSON report of a verify or verify-all run."""

    run: RunInfo
    results: list[CaseResult] = Field(default_factory=list)
    summary: Summary = Field(default_factory=Summary)
    timing: Timing = Field(default_factory=Timing)

    @property
    def theorem_failures(self) -> int:
        return sum(1 for r in self.results if r.theorem_failure)

    @property
    def all_inadmissible(self) -> bool:
        return bool(self.results) and all(r.verdict is Verdict.INADMISSIBLE for r in self.results)

    def stable_dict(self) -> dict[str, Any]:
        """Dump without wall-clock fields; identical across re-runs."""
        data = self.model_dump(mode="json", exclude={"timing": True, "results": {"__all__": {"millis"}}})
        return data


class ScanPoint(QcongBaseModel):
    params: dict[str, int]
    verdict: Verdict
    attained: Power | None = Field(
        default=None,
        description="Largest power of Phi_n attained, capped one beyond the probe.",
    )
    reason: str | None = None
    millis: int = Field(default=0, ge=0)


class ScanSummary(QcongBaseModel):
    points: int = 0
    holds: int = 0
    fails: int = 0
    undefined: int = 0
    inadmissible: int = 0

    @classmethod
    def from_points(cls, points: Iterable[ScanPoint]) -> ScanSummary:
        points = list(points)
        counts = Counter(p.verdict for p in points)
        return cls(
            points=len(points),
            holds=counts[Verdict.HOLDS],
            fails=counts[Verdict.FAILS],
            undefined=counts[Verdict.UNDEFINED],
            inadmissible=counts[Verdict.INADMISSIBLE],
        )


class ScanReport(QcongBaseModel):
    """JSON report of a grid scan."""

    run: RunInfo
    family: ScanFamily
    power: int = Field(ge=1)
    grid: dict[str, list[int]] = Field(default_factory=dict)
    points: list[ScanPoint] = Field(default_factory=list)
    summary: ScanSummary = Field(default_factory=ScanSummary)
    timing: Timing = Field(default_factory=Timing)

    @property
    def failures(self) -> list[ScanPoint]:
        return [p for p in self.points if p.verdict is Verdict.FAILS]


# Custom case files -------------------------------------------------------------


class BracketSpec(QcongBaseModel):
    """q-integer [u*k + v]_{q^s}."""

    u: Expr = Field(description="Coefficient of k.")
    v: Expr = Field(description="Constant term.")
    s: Expr = Field(default=1, description="Base exponent; the bracket is taken in q^s.")


class PochhammerSpec(QcongBaseModel):
    """(q^a; q^d)_k^e, or (-q^a; q^d)_k^e when negated."""

    a: Expr
    d: Expr
    e: Expr = Field(default=1, description="Exponent; negative values divide.")
    negated: bool = False


class QPowerSpec(QcongBaseModel):
    """sign^k q^(alpha*k^2 + beta*k); rational values as 'p/q' strings or expressions."""

    alpha: Expr = 0
    beta: Expr = 0
    sign: Literal[1, -1] = 1


class RangeSpec(QcongBaseModel):
    from_: Expr = Field(default=0, alias="from")
    to: Expr


class RhsProduct(QcongBaseModel):
    """coefficient * q^shift * prod [n]^e * prod Phi_n^e * prod (1 - q^t)^e."""

    coefficient: Expr = 1
    shift: Expr = 0
    brackets: list[tuple[Expr, Expr]] = Field(default_factory=list)
    cyclotomic: list[tuple[Expr, Expr]] = Field(default_factory=list)
    binomials: list[tuple[Expr, Expr]] = Field(default_factory=list)


class ModulusSpecModel(QcongBaseModel):
    cyclotomic: list[tuple[Expr, Expr]] = Field(default_factory=list, description="[n, e] pairs for Phi_n^e.")
    bracket: list[tuple[Expr, Expr]] = Field(default_factory=list, description="[n, e] pairs for [n]^e.")

    @model_validator(mode="after")
    def _ensure_not_empty(self) -> ModulusSpecModel:
        if not self.cyclotomic and not self.bracket:
            raise ValueError("modulus must include at least one factor")
        return self


class CustomCase(QcongBaseModel):
    """A user-defined q-congruence over named integer parameters."""

    id: NonEmptyStr = Field(description="Case id, unique across built-in and custom cases.")
    kind: Literal["q-congruence"] = "q-congruence"
    title: str = ""
    parameters: list[NonEmptyStr] = Field(default_factory=list, description="Parameter names.")
    bracket: BracketSpec | None = None
    pochhammers: list[PochhammerSpec] = Field(default_factory=list)
    qpower: QPowerSpec = Field(default_factory=QPowerSpec)
    range: RangeSpec
    rhs: list[tuple[Expr, Expr]] | RhsProduct = Field(
        default_factory=list,
        description="Either [[exponent, coefficient], ...] or a product form.",
    )
    modulus: ModulusSpecModel
    constraints: str = Field(default="", description="Clauses such as 'n odd; n >= 3; n == -1 (mod d)'.")
    conjecture: bool = False

    @field_validator("parameters")
    @classmethod
    def _identifiers(cls, value: list[str]) -> list[str]:
        for name in value:
            if not name.isidentifier():
                raise ValueError(f"parameter name {name!r} is not an identifier")
        if len(set(value)) != len(value):
            raise ValueError("parameter names must be unique")
        return value

    @model_validator(mode="after")
    def _check_expressions(self) -> CustomCase:
        names = self.parameters
        try:
            for value in self._expressions():
                parse_expression(value, names)
            parse_constraints(self.constraints, names)
            alpha = parse_expression(self.qpower.alpha, names)
            beta = parse_expression(self.qpower.beta, names)
        except ExpressionError as exc:
            raise ValueError(str(exc)) from exc
        if alpha.is_constant and beta.is_constant:
            a, b = alpha.evaluate({}), beta.evaluate({})
            if (2 * a).denominator != 1 or (a + b).denominator != 1:
                raise ValueError(f"q-power exponent {a}*k^2 + {b}*k is not an integer for every k")
        return self

    def _expressions(self) -> list[Expr]:
        values: list[Expr] = [self.range.from_, self.range.to]
        if self.bracket is not None:
            values += [self.bracket.u, self.bracket.v, self.bracket.s]
        for factor in self.pochhammers:
            values += [factor.a, factor.d, factor.e]
        pairs = list(self.modulus.cyclotomic) + list(self.modulus.bracket)
        if isinstance(self.rhs, RhsProduct):
            values += [self.rhs.coefficient, self.rhs.shift]
            pairs += list(self.rhs.brackets) + list(self.rhs.cyclotomic) + list(self.rhs.binomials)
        else:
            pairs += list(self.rhs)
        for pair in pairs:
            values += list(pair)
        return values


class CustomCaseFile(QcongBaseModel):
    """Top-level document of a custom case file."""

    schema_: str | None = Field(default=None, alias="$schema", description="Optional JSON Schema reference.")
    cases: list[CustomCase] = Field(default_factory=list)

    @model_validator(mode="after")
    def _unique_ids(self) -> CustomCaseFile:
        ids = [case.id for case in self.cases]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ValueError(f"duplicate case ids: {', '.join(duplicates)}")
        return self

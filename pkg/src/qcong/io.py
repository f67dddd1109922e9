"""Load custom case files (JSON or YAML) and write JSON reports."""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Mapping
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel

from qcong.cases.registry import CaseRegistry, Condition, CongruenceCase, QCongruenceInstance
from qcong.congruence import ModulusSpec
from qcong.expressions import Expression, parse_constraints, parse_expression
from qcong.models import CustomCase, CustomCaseFile, RhsProduct
from qcong.qpoly import LaurentPoly, cyclotomic
from qcong.qseries import BracketFactor, QPochhammerFactor, QPowerFactor, TruncatedSumSpec, q_integer
from qcong.types import CaseKind

logger = logging.getLogger(__name__)


class CaseFileSyntaxError(ValueError):
    """JSON or YAML syntax error, with the position when the parser reports one."""

    def __init__(self, path: str, message: str, line: int | None = None, column: int | None = None) -> None:
        self.path = path
        self.line = line
        self.column = column
        where = f"{path}:{line}:{column}" if line is not None else path
        super().__init__(f"{where}: {message}")


def load_custom_case_file(path: str) -> CustomCaseFile:
    """Parses and validates a custom case file.

    Args:
      path: Path to a JSON/YAML file, or '-' to read from stdin.

    Raises:
      CaseFileSyntaxError: If the document is not valid JSON/YAML.
      ValidationError: If the document violates the case file schema.
    """
    data = _load_data(path)
    if data is None:
        data = {}
    return CustomCaseFile.model_validate(data)


def load_custom_cases(path: str, registry: CaseRegistry | None = None) -> list[CongruenceCase]:
    """Loads a case file and registers its cases (when a registry is given).

    Returns:
      The cases in file order; an empty case list is a no-op.

    Raises:
      ValueError: If a custom id collides with a built-in case.
    """
    document = load_custom_case_file(path)
    cases = [custom_case(entry) for entry in document.cases]
    if registry is not None:
        for case in cases:
            registry.register_custom(case)
    logger.debug("loaded %d custom case(s) from %s", len(cases), path)
    return cases


def _load_data(path: str) -> Any:
    if path == "-":
        return _loads_by_content(sys.stdin.read(), "<stdin>")
    file_path = Path(path)
    raw = file_path.read_text(encoding="utf-8")
    suffix = file_path.suffix.lower()
    if suffix in {".yaml", ".yml"}:
        return _load_yaml(raw, path)
    if suffix == ".json":
        return _load_json(raw, path)
    return _loads_by_content(raw, path)


def _loads_by_content(raw: str, source: str) -> Any:
    stripped = raw.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return _load_json(raw, source)
    return _load_yaml(raw, source)


def _load_json(raw: str, source: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CaseFileSyntaxError(source, exc.msg, exc.lineno, exc.colno) from exc


def _load_yaml(raw: str, source: str) -> Any:
    try:
        return yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        problem = getattr(exc, "problem", None) or str(exc)
        if mark is not None:
            raise CaseFileSyntaxError(source, problem, mark.line + 1, mark.column + 1) from exc
        raise CaseFileSyntaxError(source, problem) from exc


# Custom case -> registry case ------------------------------------------------------


def _pairs(values: list[tuple[Any, Any]], names: list[str]) -> list[tuple[Expression, Expression]]:
    return [(parse_expression(a, names), parse_expression(b, names)) for a, b in values]


def custom_case(entry: CustomCase) -> CongruenceCase:
    """Turns a validated file entry into a registry case."""
    names = entry.parameters

    def ints(pairs: list[tuple[Expression, Expression]], params: Mapping[str, int]) -> tuple[tuple[int, int], ...]:
        return tuple((a.evaluate_int(params), b.evaluate_int(params)) for a, b in pairs)

    k_from = parse_expression(entry.range.from_, names)
    k_to = parse_expression(entry.range.to, names)
    bracket = (
        None
        if entry.bracket is None
        else tuple(parse_expression(x, names) for x in (entry.bracket.u, entry.bracket.v, entry.bracket.s))
    )
    pochhammers = [
        (parse_expression(f.a, names), parse_expression(f.d, names), parse_expression(f.e, names), f.negated)
        for f in entry.pochhammers
    ]
    alpha = parse_expression(entry.qpower.alpha, names)
    beta = parse_expression(entry.qpower.beta, names)
    cyclotomic_pairs = _pairs(entry.modulus.cyclotomic, names)
    bracket_pairs = _pairs(entry.modulus.bracket, names)

    def build_rhs(params: Mapping[str, int]) -> LaurentPoly:
        if isinstance(entry.rhs, RhsProduct):
            product = entry.rhs
            result = LaurentPoly.monomial(
                parse_expression(product.shift, names).evaluate_int(params),
                parse_expression(product.coefficient, names).evaluate(params),
            )
            for n, e in ints(_pairs(product.brackets, names), params):
                result = result * q_integer(n) ** e
            for n, e in ints(_pairs(product.cyclotomic, names), params):
                result = result * cyclotomic(n) ** e
            for t, e in ints(_pairs(product.binomials, names), params):
                result = result * LaurentPoly.binomial(t) ** e
            return result
        terms: dict[int, Any] = {}
        for exponent, coefficient in _pairs(entry.rhs, names):
            key = exponent.evaluate_int(params)
            terms[key] = terms.get(key, 0) + coefficient.evaluate(params)
        return LaurentPoly(terms)

    def builder(params: Mapping[str, int]) -> QCongruenceInstance:
        spec = TruncatedSumSpec(
            pochhammers=tuple(
                QPochhammerFactor(a.evaluate_int(params), d.evaluate_int(params), e.evaluate_int(params), negated)
                for a, d, e, negated in pochhammers
            ),
            qpower=QPowerFactor(alpha.evaluate(params), beta.evaluate(params), entry.qpower.sign),
            k_from=k_from.evaluate_int(params),
            k_to=k_to.evaluate_int(params),
            bracket=None if bracket is None else BracketFactor(*(x.evaluate_int(params) for x in bracket)),
        )
        modulus = ModulusSpec(ints(cyclotomic_pairs, params), ints(bracket_pairs, params))
        return QCongruenceInstance(spec, build_rhs(params), modulus)

    conditions = [Condition(c.text, c.holds) for c in parse_constraints(entry.constraints, names)]
    conditions.append(
        Condition(
            "q-power exponent integral for every k",
            lambda p: QPowerFactor(alpha.evaluate(p), beta.evaluate(p)).integral_everywhere(),
        )
    )
    return CongruenceCase(
        id=entry.id,
        kind=CaseKind.Q_CONGRUENCE,
        title=entry.title or f"custom case {entry.id}",
        parameters=tuple(names),
        conditions=tuple(conditions),
        builder=builder,
        conjecture=entry.conjecture,
        reference="custom case file",
    )


# Reports -------------------------------------------------------------------------


def report_path(directory: Path, command: str) -> Path:
    """A fresh file name inside ``directory`` for a report of ``command``."""
    stamp = datetime.now(UTC).strftime("%Y%m%dT%H%M%S%fZ")
    return directory / f"qcong-{command}-{stamp}.json"


def write_report(report: BaseModel, path: Path) -> Path:
    """Writes a report model as pretty JSON, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(report.model_dump(mode="json", by_alias=True), indent=2, ensure_ascii=True)
    path.write_text(text + "\n", encoding="utf-8")
    return path

"""Shared CLI utilities for rich output and logging."""

from __future__ import annotations

import logging
import re
from collections.abc import Iterable, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from qcong.models import CaseResult, ScanPoint
from qcong.types import Verdict

VERDICT_STYLES = {
    Verdict.HOLDS: "green",
    Verdict.FAILS: "red",
    Verdict.UNDEFINED: "magenta",
    Verdict.INADMISSIBLE: "yellow",
}


def rich_console(stderr: bool = False) -> Console:
    """Returns a Rich console.

    Args:
      stderr: If True, creates a console that writes to stderr.
    """
    return Console(stderr=stderr)


def configure_logging(verbose: bool = False) -> None:
    """Routes library logging to stderr; DEBUG with --verbose, WARNING otherwise."""
    level = logging.DEBUG if verbose else logging.WARNING
    logger = logging.getLogger("qcong")
    logger.setLevel(level)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = RichHandler(console=rich_console(stderr=True), show_time=False, show_path=False, markup=False)
    logger.addHandler(handler)
    logger.propagate = False


def render_validation_table(
    errors: Iterable[dict],
    *,
    title: str,
    stderr: bool = True,
) -> None:
    """Renders a validation error table using Rich."""
    console = rich_console(stderr=stderr)
    table = Table(title=title, show_lines=False)
    table.add_column("Location", style="bold")
    table.add_column("Message")
    table.add_column("Type", style="dim")
    for error in errors:
        loc = ".".join(str(part) for part in error.get("loc", [])) or "<root>"
        msg = error.get("msg", "Invalid value")
        err_type = error.get("type", "validation_error")
        table.add_row(loc, msg, err_type)
    console.print(table)


def format_params(params: dict[str, int]) -> str:
    return ", ".join(f"{name}={value}" for name, value in params.items())


def _verdict_cell(verdict: Verdict) -> str:
    style = VERDICT_STYLES[verdict]
    return f"[{style}]{verdict.value}[/{style}]"


def _note(result: CaseResult) -> str:
    detail = result.detail
    if detail.reason:
        return detail.reason
    parts: list[str] = []
    if detail.failing_factor:
        n, e = detail.failing_factor
        parts.append(f"fails at Phi_{n}^{e}")
    if detail.valuation is not None:
        parts.append(f"v_p = {detail.valuation}")
    if detail.oracle:
        parts.append(f"oracle {detail.oracle}")
    if result.conjecture:
        parts.append("conjecture")
    return "; ".join(parts)


def render_results_table(results: Sequence[CaseResult], *, title: str) -> None:
    """Renders one row per verified point."""
    console = rich_console()
    table = Table(title=title, show_lines=False)
    table.add_column("Case", style="bold")
    table.add_column("Params")
    table.add_column("Verdict")
    table.add_column("ms", justify="right", style="dim")
    table.add_column("Notes")
    for result in results:
        table.add_row(
            result.case,
            format_params(result.params),
            _verdict_cell(result.verdict),
            str(result.millis),
            _note(result),
        )
    console.print(table)


def render_scan_table(points: Sequence[ScanPoint], *, title: str, power: int) -> None:
    """Renders admissible scan points with failures first."""
    console = rich_console()
    table = Table(title=title, show_lines=False)
    table.add_column("Params", style="bold")
    table.add_column("Verdict")
    table.add_column(f"Power (probe {power})", justify="right")
    table.add_column("Notes")
    admissible = [p for p in points if p.verdict is not Verdict.INADMISSIBLE]
    ordered = sorted(admissible, key=lambda p: p.verdict is not Verdict.FAILS)
    for point in ordered:
        attained = "" if point.attained is None else str(point.attained)
        table.add_row(format_params(point.params), _verdict_cell(point.verdict), attained, point.reason or "")
    console.print(table)


def render_case_summary(results: Sequence[CaseResult], *, title: str) -> None:
    """Renders one row per case with verdict counts."""
    console = rich_console()
    table = Table(title=title, show_lines=False)
    table.add_column("Case", style="bold")
    for verdict in Verdict:
        table.add_column(verdict.value, justify="right")
    table.add_column("ms", justify="right", style="dim")
    counts: dict[str, dict[Verdict, int]] = {}
    millis: dict[str, int] = {}
    for result in results:
        counts.setdefault(result.case, dict.fromkeys(Verdict, 0))[result.verdict] += 1
        millis[result.case] = millis.get(result.case, 0) + result.millis
    for case_id, row in counts.items():
        cells = [f"[{VERDICT_STYLES[v]}]{n}[/{VERDICT_STYLES[v]}]" if n else "0" for v, n in row.items()]
        table.add_row(case_id, *cells, str(millis[case_id]))
    console.print(table)


_RANGE = re.compile(r"^(?P<low>-?\d+)\.\.(?P<high>-?\d+)(?::(?P<parity>odd|even))?$")


def parse_range(text: str) -> list[int]:
    """Parses ``a..b``, ``a..b:odd``, ``a..b:even``, single integers and comma lists.

    Ranges are inclusive; ``5..3`` is empty. Duplicates are dropped, order kept.

    Raises:
      ValueError: On anything else.
    """
    values: list[int] = []
    for item in text.split(","):
        item = item.strip()
        match = _RANGE.match(item)
        if match is not None:
            low, high = int(match["low"]), int(match["high"])
            parity = match["parity"]
            values += [
                v for v in range(low, high + 1) if parity is None or v % 2 == (1 if parity == "odd" else 0)
            ]
            continue
        try:
            values.append(int(item))
        except ValueError:
            raise ValueError(f"cannot parse {item!r}; expected a..b, a..b:odd, a..b:even or integers") from None
    return list(dict.fromkeys(values))


def parse_extra_options(args: Sequence[str]) -> dict[str, str]:
    """Turns leftover ``--name value`` / ``--name=value`` tokens into a mapping.

    Raises:
      ValueError: On a stray value, a missing value or a repeated name.
    """
    options: dict[str, str] = {}
    tokens = list(args)
    index = 0
    while index < len(tokens):
        token = tokens[index]
        if not token.startswith("--") or len(token) == 2:
            raise ValueError(f"unexpected argument {token!r}; parameters are passed as --name VALUE")
        name, sep, value = token[2:].partition("=")
        if not sep:
            if index + 1 >= len(tokens):
                raise ValueError(f"--{name} needs a value")
            value = tokens[index + 1]
            index += 1
        index += 1
        key = name.replace("-", "_")
        if key in options:
            raise ValueError(f"--{name} given twice")
        options[key] = value
    return options

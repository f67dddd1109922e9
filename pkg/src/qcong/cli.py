"""CLI entrypoints for qcong."""

from __future__ import annotations

import dataclasses
import json
import textwrap
import time
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import typer
from pydantic import BaseModel, ValidationError
from rich.table import Table

from qcong import __version__
from qcong.cases.driver import (
    SCAN_FAMILIES,
    RunInterrupted,
    ScanGrid,
    VerifyOptions,
    expand_ranges,
    scan,
    verify_points,
)
from qcong.cases.profiles import Point, profile_points
from qcong.cases.registry import REGISTRY, UnknownCaseError
from qcong.cli_helpers import (
    configure_logging,
    parse_extra_options,
    parse_range,
    render_case_summary,
    render_results_table,
    render_scan_table,
    render_validation_table,
    rich_console,
)
from qcong.config import RunConfig, load_config
from qcong.io import CaseFileSyntaxError, load_custom_cases, report_path, write_report
from qcong.json_schema import case_file_schema_text
from qcong.models import RunInfo, RunReport, Summary, Timing
from qcong.rich_help import RichTyperCommand, RichTyperGroup
from qcong.transforms import IDENTITIES, UnknownIdentityError, get_identity, run_identity
from qcong.types import OracleMode, OutputFormat, Profile, ScanFamily

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130

PARAMETER_CONTEXT = {"allow_extra_args": True, "ignore_unknown_options": True}

APP_HELP = textwrap.dedent(
    """
    [bold]qcong[/bold]

    Exact verification of q-congruences and supercongruences.
    Scan parameter families for counterexamples.
    Check basic hypergeometric identities to a truncation order.
    """
).strip()

APP_EPILOG = textwrap.dedent(
    """
    [bold cyan]Examples[/bold cyan]

      - qcong verify T1a --n 3..31:odd

      - qcong verify C5 --p 3,5,7,11

      - qcong verify-all --profile quick --workers 4

      - qcong scan new-d --d 5 --r 3 --n-max 27 --power 2

      - qcong series-check rdid --r 1 --order 100

    [bold cyan]Environment[/bold cyan]

      - QCONG_REPORT_DIR, QCONG_WORKERS, QCONG_ORDER, QCONG_PRECISION, QCONG_ORACLE
    """
).strip()


def _version_callback(value: bool) -> None:
    if not value:
        return
    typer.echo(f"qcong {__version__}")
    raise typer.Exit()


def _render_validation_error(exc: ValidationError, what: str) -> None:
    """Renders Pydantic validation errors as a location / message / type table."""
    typer.secho(f"{what} is invalid.", fg=typer.colors.RED, bold=True, err=True)
    render_validation_table(exc.errors(), title="Validation Errors", stderr=True)
    typer.echo("Tip: run 'qcong export-json-schema' and use the schema in your editor.", err=True)


def _usage_error(message: str) -> typer.Exit:
    typer.secho(message, fg=typer.colors.RED, bold=True, err=True)
    return typer.Exit(code=EXIT_USAGE)


def _setup(verbose: bool, **overrides: Any) -> RunConfig:
    """Logging, configuration and custom cases; every failure here exits 2."""
    configure_logging(verbose)
    try:
        config = load_config(**overrides)
    except ValidationError as exc:
        _render_validation_error(exc, "Configuration")
        raise typer.Exit(code=EXIT_USAGE) from exc
    if config.cases_file is not None:
        try:
            load_custom_cases(str(config.cases_file), REGISTRY)
        except ValidationError as exc:
            _render_validation_error(exc, f"Case file {config.cases_file}")
            raise typer.Exit(code=EXIT_USAGE) from exc
        except (CaseFileSyntaxError, OSError, ValueError) as exc:
            raise _usage_error(f"Cannot load {config.cases_file}: {exc}") from exc
    return config


def _parameter_ranges(ctx: typer.Context) -> dict[str, list[int]]:
    try:
        options = parse_extra_options(ctx.args)
        return {name: parse_range(value) for name, value in options.items()}
    except ValueError as exc:
        raise _usage_error(str(exc)) from exc


def _emit(report: BaseModel, config: RunConfig, command: str) -> None:
    """Writes the JSON report (unless disabled) and prints it with --json."""
    as_json = config.output is OutputFormat.JSON
    if config.write_report:
        try:
            directory = config.ensure_report_dir()
        except ValueError as exc:
            raise _usage_error(str(exc)) from exc
        path = write_report(report, report_path(directory, command))
        typer.secho(f"Report written to {path}", fg=typer.colors.CYAN, err=as_json)
    if as_json:
        typer.echo(json.dumps(report.model_dump(mode="json", by_alias=True), indent=2))


def _finish_run(report: RunReport, config: RunConfig, command: str, *, detailed: bool) -> None:
    as_json = config.output is OutputFormat.JSON
    if not as_json:
        title = f"qcong {command}"
        if detailed:
            render_results_table(report.results, title=title)
        else:
            render_case_summary(report.results, title=title)
    _emit(report, config, command)
    summary = report.summary
    line = (
        f"{summary.checked} checked: {summary.holds} hold, {summary.fails} fail, "
        f"{summary.undefined} undefined, {summary.inadmissible} inadmissible"
    )
    if summary.conjecture_failures:
        line += f" ({summary.conjecture_failures} conjecture failure(s), not fatal)"
    color = typer.colors.GREEN if report.theorem_failures == 0 else typer.colors.RED
    typer.secho(line, fg=color, bold=True, err=as_json)
    if report.timing.interrupted:
        raise typer.Exit(code=EXIT_INTERRUPTED)
    if report.all_inadmissible:
        raise _usage_error("Every requested point is inadmissible.")
    if report.theorem_failures:
        raise typer.Exit(code=EXIT_FAILURE)


def _run_points(
    points: Sequence[Point], config: RunConfig, command: str, run_config: dict[str, Any], *, detailed: bool
) -> None:
    options = VerifyOptions(oracle=config.oracle is OracleMode.ON, precision=config.precision)
    start = time.perf_counter()
    interrupted = False
    try:
        results = verify_points(points, options=options, workers=config.workers, cases_file=config.cases_file)
    except RunInterrupted as exc:
        results, interrupted = exc.partial, True
        typer.secho("Interrupted; writing partial report.", fg=typer.colors.YELLOW, err=True)
    report = RunReport(
        run=RunInfo(command=command, config={**config.summary(), **run_config}, version=__version__),
        results=results,
        summary=Summary.from_results(results),
        timing=Timing(total_millis=int((time.perf_counter() - start) * 1000), interrupted=interrupted),
    )
    _finish_run(report, config, command, detailed=detailed)


app = typer.Typer(
    name="qcong",
    cls=RichTyperGroup,
    help=APP_HELP,
    epilog=APP_EPILOG,
    short_help="Exact verification of q-congruences.",
    no_args_is_help=True,
    rich_markup_mode="rich",
    pretty_exceptions_enable=True,
    pretty_exceptions_show_locals=False,
    suggest_commands=True,
    context_settings={"help_option_names": ["-h", "--help"]},
)


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        help="Show the installed version and exit.",
        is_eager=True,
        callback=_version_callback,
        rich_help_panel="Global options",
    ),
) -> None:
    """qcong command group."""


JSON_OPTION = typer.Option(False, "--json", help="Print the JSON report to stdout.", rich_help_panel="Output")
OUT_OPTION = typer.Option(
    None,
    "--out",
    metavar="DIR",
    help="Report directory (default: $QCONG_REPORT_DIR or ./qcong-reports).",
    file_okay=False,
    rich_help_panel="Output",
)
NO_REPORT_OPTION = typer.Option(False, "--no-report", help="Do not write a report file.", rich_help_panel="Output")
WORKERS_OPTION = typer.Option(None, "--workers", min=1, help="Worker processes.", rich_help_panel="Execution")
ORACLE_OPTION = typer.Option(
    None, "--oracle", help="Cross-check q-congruences numerically at roots of unity.", rich_help_panel="Execution"
)
PRECISION_OPTION = typer.Option(
    None, "--precision", metavar="DIGITS", help="Decimal digits for the numeric oracle.", rich_help_panel="Execution"
)
CASES_OPTION = typer.Option(
    None,
    "--cases",
    metavar="FILE",
    help="Custom case file (JSON or YAML) registered before the run.",
    exists=True,
    dir_okay=False,
    rich_help_panel="Cases",
)
VERBOSE_OPTION = typer.Option(False, "--verbose", "-v", help="Log per-point progress to stderr.")


def _overrides(json_output: bool, out: Path | None, no_report: bool, **values: Any) -> dict[str, Any]:
    return {
        "output": OutputFormat.JSON if json_output else None,
        "report_dir": out,
        "write_report": False if no_report else None,
        **values,
    }


VERIFY_HELP = textwrap.dedent(
    """
    Verify one case over a grid of parameter values.

    Parameters are passed as --NAME VALUES where VALUES is a..b, a..b:odd,
    a..b:even, an integer or a comma list. Inadmissible points are reported,
    not checked.
    """
).strip()

VERIFY_EPILOG = textwrap.dedent(
    """
      - qcong verify T1a --n 3..31:odd

      - qcong verify T5 --d 4 --r 1,3,-1 --n 1..35

      - qcong verify C5 --p 3,5,7,11 --json

      - qcong verify MYCASE --cases my-cases.yaml --n 3..15:odd
    """
).strip()


@app.command(
    "verify",
    cls=RichTyperCommand,
    help=VERIFY_HELP,
    epilog=VERIFY_EPILOG,
    rich_help_panel="Verification",
    context_settings=PARAMETER_CONTEXT,
)
def verify(
    ctx: typer.Context,
    case_id: str = typer.Argument(..., metavar="CASE", help="Registered case id (see 'qcong list-cases')."),
    json_output: bool = JSON_OPTION,
    out: Path | None = OUT_OPTION,
    no_report: bool = NO_REPORT_OPTION,
    workers: int | None = WORKERS_OPTION,
    oracle: OracleMode | None = ORACLE_OPTION,
    precision: int | None = PRECISION_OPTION,
    cases: Path | None = CASES_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Verifies one case over the cartesian product of the parameter ranges.

    Raises:
      typer.Exit: 1 on a theorem failure, 2 on usage errors or when every point
        is inadmissible, 130 when interrupted.
    """
    config = _setup(
        verbose,
        **_overrides(
            json_output, out, no_report, workers=workers, oracle=oracle, precision=precision, cases_file=cases
        ),
    )
    try:
        case = REGISTRY.get(case_id)
    except UnknownCaseError as exc:
        raise _usage_error(f"Unknown case {case_id!r}. Run 'qcong list-cases' to see registered ids.") from exc
    ranges = _parameter_ranges(ctx)
    try:
        grid = expand_ranges(case.parameters, ranges)
    except ValueError as exc:
        raise _usage_error(f"{case_id}: {exc}") from exc
    if not grid:
        raise _usage_error(f"{case_id}: the parameter grid is empty.")
    run_config = {"case": case_id, "grid": {name: values for name, values in ranges.items()}}
    _run_points([(case_id, params) for params in grid], config, "verify", run_config, detailed=True)


VERIFY_ALL_HELP = textwrap.dedent(
    """
    Verify every registered statement on a fixed grid.

    quick runs a small grid for every case; full extends every range.
    Conjecture failures are flagged but do not change the exit status.
    """
).strip()

VERIFY_ALL_EPILOG = textwrap.dedent(
    """
      - qcong verify-all --profile quick

      - qcong verify-all --profile full --workers 8 --oracle on

      - qcong verify-all --json > report.json
    """
).strip()


@app.command(
    "verify-all",
    cls=RichTyperCommand,
    help=VERIFY_ALL_HELP,
    epilog=VERIFY_ALL_EPILOG,
    rich_help_panel="Verification",
)
def verify_all(
    profile: Profile = typer.Option(Profile.QUICK, "--profile", help="Grid to run.", rich_help_panel="Cases"),
    case_filter: list[str] | None = typer.Option(
        None, "--case", help="Restrict the profile to these case ids (repeatable).", rich_help_panel="Cases"
    ),
    json_output: bool = JSON_OPTION,
    out: Path | None = OUT_OPTION,
    no_report: bool = NO_REPORT_OPTION,
    workers: int | None = WORKERS_OPTION,
    oracle: OracleMode | None = ORACLE_OPTION,
    precision: int | None = PRECISION_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Runs a verification profile; results are ordered by case registration."""
    config = _setup(
        verbose, **_overrides(json_output, out, no_report, workers=workers, oracle=oracle, precision=precision)
    )
    points = profile_points(profile)
    if case_filter:
        unknown = [case_id for case_id in case_filter if case_id not in REGISTRY]
        if unknown:
            raise _usage_error(f"Unknown case(s): {', '.join(unknown)}")
        points = [point for point in points if point[0] in case_filter]
    run_config = {"profile": profile.value, "cases": sorted(case_filter or [])}
    _run_points(points, config, "verify-all", run_config, detailed=False)


SCAN_HELP = textwrap.dedent(
    """
    Scan a summation family over a parameter grid for Phi_n^POWER.

    Each point reports holds / fails / undefined / inadmissible and the largest
    power of Phi_n reached, probing one beyond POWER. Failures are listed first.
    """
).strip()

SCAN_EPILOG = textwrap.dedent(
    """
      - qcong scan new-d --d 5 --r 3 --n-max 27 --power 2

      - qcong scan new-d --d 4 --r 1 --n-max 31

      - qcong scan new-odd --d 5 --r 2 --n 3..41:odd

      - qcong scan 2nk --d 3..6 --n-max 40 --power 3
    """
).strip()


@app.command(
    "scan",
    cls=RichTyperCommand,
    help=SCAN_HELP,
    epilog=SCAN_EPILOG,
    rich_help_panel="Exploration",
    context_settings=PARAMETER_CONTEXT,
)
def scan_command(
    ctx: typer.Context,
    family: ScanFamily = typer.Argument(..., metavar="FAMILY", help="new-d, new-odd, 2nk or new-2."),
    n_max: int | None = typer.Option(
        None, "--n-max", min=1, help="Shorthand for --n 1..N_MAX.", rich_help_panel="Grid"
    ),
    power: int = typer.Option(2, "--power", min=1, help="Required power of Phi_n.", rich_help_panel="Grid"),
    json_output: bool = JSON_OPTION,
    out: Path | None = OUT_OPTION,
    no_report: bool = NO_REPORT_OPTION,
    workers: int | None = WORKERS_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Scans a family grid; exits 0 whatever the verdicts, 130 when interrupted."""
    config = _setup(verbose, **_overrides(json_output, out, no_report, workers=workers))
    ranges = _parameter_ranges(ctx)
    if n_max is not None:
        if "n" in ranges:
            raise _usage_error("Give either --n or --n-max, not both.")
        ranges["n"] = list(range(1, n_max + 1))
    try:
        expand_ranges(SCAN_FAMILIES[family].parameters, ranges)
    except ValueError as exc:
        raise _usage_error(f"{family.value}: {exc}") from exc
    grid = ScanGrid(family, ranges, power)
    run = RunInfo(command="scan", config={**config.summary(), "family": family.value}, version=__version__)
    report = scan(grid, workers=config.workers, run=run)
    as_json = config.output is OutputFormat.JSON
    if not as_json:
        title = f"{family.value} modulo Phi_n^{power}"
        render_scan_table(report.points, title=title, power=power)
    _emit(report, config, "scan")
    summary = report.summary
    typer.secho(
        f"{summary.points} point(s): {summary.holds} hold, {summary.fails} fail, "
        f"{summary.undefined} undefined, {summary.inadmissible} inadmissible",
        fg=typer.colors.YELLOW if summary.fails else typer.colors.GREEN,
        bold=True,
        err=as_json,
    )
    if report.timing.interrupted:
        raise typer.Exit(code=EXIT_INTERRUPTED)


SERIES_CHECK_HELP = textwrap.dedent(
    """
    Check a summation or transformation identity exactly.

    Terminating identities compare rational functions; the others compare
    q-expansions through q^ORDER. Unspecified parameters use the defaults shown
    by 'qcong list-cases --identities'. List parameters take comma lists.
    """
).strip()

SERIES_CHECK_EPILOG = textwrap.dedent(
    """
      - qcong series-check rdid --r 1 --order 100

      - qcong series-check sun-euler

      - qcong series-check 6phi5-term --a 3 --b 1 --c 2 --n 3 --base 2

      - qcong series-check andrews-m --m 2 --b 1,1 --c 1,26 --n 4 --base 6

      - qcong series-check rogers-6phi5 --examples
    """
).strip()


def _identity_value(text: str) -> int | list[int]:
    if "," in text:
        return [int(part) for part in text.split(",") if part.strip()]
    return int(text)


@app.command(
    "series-check",
    cls=RichTyperCommand,
    help=SERIES_CHECK_HELP,
    epilog=SERIES_CHECK_EPILOG,
    rich_help_panel="Identities",
    context_settings=PARAMETER_CONTEXT,
)
def series_check(
    ctx: typer.Context,
    identity: str = typer.Argument(..., metavar="IDENTITY", help="Identity id, e.g. rdid or sun-euler."),
    order: int | None = typer.Option(None, "--order", min=1, help="Truncation order for series comparisons."),
    examples: bool = typer.Option(False, "--examples", help="Run every registered example instance."),
    json_output: bool = JSON_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Checks one identity instance (or its registered examples).

    Raises:
      typer.Exit: 1 when an instance does not match, 2 for unknown ids or
        rejected parameters.
    """
    config = _setup(verbose, **_overrides(json_output, None, True, order=order))
    try:
        entry = get_identity(identity)
    except UnknownIdentityError as exc:
        known = ", ".join(IDENTITIES)
        raise _usage_error(f"Unknown identity {identity!r}. Known: {known}") from exc
    try:
        params = {name: _identity_value(value) for name, value in parse_extra_options(ctx.args).items()}
    except ValueError as exc:
        raise _usage_error(str(exc)) from exc
    instances = [dict(example) for example in entry.examples] if examples else [params]
    checks = []
    for instance in instances:
        try:
            checks.append(run_identity(identity, instance, config.order))
        except ValueError as exc:
            raise _usage_error(f"{identity} rejected: {exc}") from exc
    if config.output is OutputFormat.JSON:
        typer.echo(json.dumps([dataclasses.asdict(check) for check in checks], indent=2))
    for check in checks:
        shown = ", ".join(f"{k}={v}" for k, v in check.params.items()) or "no parameters"
        scope = f" through q^{check.order}" if check.order is not None else ""
        if check.holds:
            typer.secho(f"{identity} ({shown}) holds{scope}.", fg=typer.colors.GREEN, bold=True, err=json_output)
        else:
            where = f"; first mismatch at q^{check.first_mismatch}" if check.first_mismatch is not None else ""
            typer.secho(f"{identity} ({shown}) does not hold{where}.", fg=typer.colors.RED, bold=True, err=json_output)
    if not all(check.holds for check in checks):
        raise typer.Exit(code=EXIT_FAILURE)


LIST_CASES_HELP = textwrap.dedent(
    """
    List registered cases (built-in and custom) or identities.
    """
).strip()


@app.command(
    "list-cases",
    cls=RichTyperCommand,
    help=LIST_CASES_HELP,
    epilog="  - qcong list-cases\n\n  - qcong list-cases --identities --json",
    rich_help_panel="Exploration",
)
def list_cases(
    identities: bool = typer.Option(False, "--identities", help="List identity ids instead of cases."),
    json_output: bool = JSON_OPTION,
    cases: Path | None = CASES_OPTION,
) -> None:
    """Prints the case or identity table."""
    _setup(False, cases_file=cases)
    if identities:
        rows = [
            {"id": entry.id, "description": entry.description, "defaults": dict(entry.defaults), "series": entry.series}
            for entry in IDENTITIES.values()
        ]
        columns = ("id", "description", "defaults")
    else:
        rows = [
            {
                "id": case.id,
                "kind": case.kind.value,
                "parameters": list(case.parameters),
                "conditions": case.condition,
                "conjecture": case.conjecture,
                "title": case.title,
            }
            for case in REGISTRY
        ]
        columns = ("id", "kind", "parameters", "conditions", "title")
    if json_output:
        typer.echo(json.dumps(rows, indent=2))
        return
    table = Table(title="Identities" if identities else "Cases", show_lines=False)
    for column in columns:
        table.add_column(column.capitalize(), style="bold" if column == "id" else None)
    for row in rows:
        cells = []
        for column in columns:
            value = row[column]
            cells.append(", ".join(value) if isinstance(value, list) else str(value))
        if row.get("conjecture"):
            cells[0] += " [yellow](conjecture)[/yellow]"
        table.add_row(*cells)
    rich_console().print(table)


EXPORT_JSON_SCHEMA_HELP = textwrap.dedent(
    """
    Export the JSON Schema of custom case files.
    """
).strip()

EXPORT_JSON_SCHEMA_EPILOG = textwrap.dedent(
    """
      - qcong export-json-schema -o schemas/qcong-cases.schema.json
    """
).strip()


@app.command(
    "export-json-schema",
    cls=RichTyperCommand,
    help=EXPORT_JSON_SCHEMA_HELP,
    epilog=EXPORT_JSON_SCHEMA_EPILOG,
    rich_help_panel="Cases",
)
def export_json_schema(
    output: Path | None = typer.Option(
        None,
        "--output",
        "-o",
        metavar="FILE",
        help="Write JSON Schema to a file instead of stdout.",
        dir_okay=False,
        writable=True,
    ),
) -> None:
    """Exports JSON Schema for custom case files."""
    schema_text = case_file_schema_text()
    if output:
        output.write_text(schema_text, encoding="utf-8")
        typer.secho(f"Wrote {output}", fg=typer.colors.GREEN, bold=True)
        return
    typer.echo(schema_text)


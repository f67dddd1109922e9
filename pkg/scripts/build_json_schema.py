#!/usr/bin/env -S uv run --script
# /// script
# requires-python = ">=3.13"
# dependencies = [
#   "pydantic>=2.6",
#   "pydantic-settings>=2.12.0",
#   "pyyaml>=6.0",
#   "rich>=13.7",
#   "typer>=0.12",
#   "mpmath>=1.3",
# ]
# ///

"""Build the JSON Schema for custom case files.

Writes `schemas/qcong-cases.schema.json`, the file referenced by `$schema` in case
files. Imports the local `qcong` package from `src/` so it runs in uv script mode
without installing the project.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Final

import typer
from rich.console import Console

REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT / "src"))

from qcong.json_schema import case_file_schema_text  # noqa: E402

APP = typer.Typer(add_completion=False)
CONSOLE: Final[Console] = Console()

OUTPUT_PATH = REPO_ROOT / "schemas" / "qcong-cases.schema.json"


@APP.command()
def main(check: bool = typer.Option(False, "--check", help="Fail if the committed schema is stale.")) -> None:
    """Generate and write the case file JSON Schema."""
    schema_text = case_file_schema_text() + "\n"
    if check:
        current = OUTPUT_PATH.read_text(encoding="utf-8") if OUTPUT_PATH.exists() else ""
        if current != schema_text:
            CONSOLE.print(f"[red]Stale[/red] {OUTPUT_PATH.relative_to(REPO_ROOT)}; run this script to refresh it.")
            raise typer.Exit(code=1)
        CONSOLE.print(f"[green]Up to date[/green] {OUTPUT_PATH.relative_to(REPO_ROOT)}")
        return
    OUTPUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUTPUT_PATH.write_text(schema_text, encoding="utf-8")
    CONSOLE.print(f"[green]Wrote[/green] {OUTPUT_PATH.relative_to(REPO_ROOT)}")


if __name__ == "__main__":
    APP()

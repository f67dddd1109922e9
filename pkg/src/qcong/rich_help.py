"""Rich help formatting for qcong commands: option panels plus an examples panel."""

from __future__ import annotations

from collections.abc import Iterable

import click
import typer.core as core
import typer.rich_utils as rich_utils
from rich.align import Align
from rich.padding import Padding
from rich.panel import Panel


def _group_by_panel(items: Iterable, default: str) -> dict[str, list]:
    """Buckets params/commands by their rich_help_panel; the default panel comes first."""
    panels: dict[str, list] = {default: []}
    for item in items:
        panels.setdefault(getattr(item, rich_utils._RICH_HELP_PANEL_NAME, None) or default, []).append(item)
    return panels


def _visible_commands(group: click.Group, ctx: click.Context) -> list[click.Command]:
    commands = (group.get_command(ctx, name) for name in group.list_commands(ctx))
    return [command for command in commands if command is not None and not command.hidden]


def rich_format_help_custom(
    *,
    obj: click.Command | click.Group,
    ctx: click.Context,
    markup_mode: rich_utils.MarkupModeStrict,
) -> None:
    """Prints usage, help text, grouped option panels and the epilog as an examples panel."""
    console = rich_utils._get_rich_console()
    console.print(Padding(rich_utils.highlighter(obj.get_usage(ctx)), 1), style=rich_utils.STYLE_USAGE_COMMAND)
    if obj.help:
        help_text = rich_utils._get_help_text(obj=obj, markup_mode=markup_mode)
        console.print(Padding(Align(help_text, pad=False), (0, 1, 1, 1)))

    params = [p for p in obj.get_params(ctx) if not getattr(p, "hidden", False)]
    sections = (
        (rich_utils.ARGUMENTS_PANEL_TITLE, [p for p in params if isinstance(p, click.Argument)]),
        (rich_utils.OPTIONS_PANEL_TITLE, [p for p in params if isinstance(p, click.Option)]),
    )
    for default, members in sections:
        for name, grouped in _group_by_panel(members, default).items():
            rich_utils._print_options_panel(
                name=name, params=grouped, ctx=ctx, markup_mode=markup_mode, console=console
            )

    if isinstance(obj, click.Group):
        commands = _visible_commands(obj, ctx)
        width = max((len(command.name or "") for command in commands), default=0)
        for name, grouped in _group_by_panel(commands, rich_utils.COMMANDS_PANEL_TITLE).items():
            rich_utils._print_commands_panel(
                name=name, commands=grouped, markup_mode=markup_mode, console=console, cmd_len=width
            )

    # epilog keeps its line breaks
    if obj.epilog:
        title = "Examples & Environment" if isinstance(obj, click.Group) else "Examples"
        text = rich_utils._make_rich_text(text=obj.epilog, markup_mode=markup_mode)
        console.print(Padding(Panel(text, title=title, title_align="left", border_style="cyan"), 1))


class RichTyperCommand(core.TyperCommand):
    """Command whose epilog renders as an examples panel."""

    def format_help(self, ctx: click.Context, formatter: click.HelpFormatter) -> None:  # type: ignore[override]
        if not core.HAS_RICH or self.rich_markup_mode is None:
            return super().format_help(ctx, formatter)
        return rich_format_help_custom(obj=self, ctx=ctx, markup_mode=self.rich_markup_mode)


class RichTyperGroup(core.TyperGroup):
    """Group whose epilog renders as an examples panel."""

    def format_help(self, ctx: click.Context, formatter: click.HelpFormatter) -> None:  # type: ignore[override]
        if not core.HAS_RICH or self.rich_markup_mode is None:
            return super().format_help(ctx, formatter)
        return rich_format_help_custom(obj=self, ctx=ctx, markup_mode=self.rich_markup_mode)

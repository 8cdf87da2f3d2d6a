"""
Console reporting for a SPECTRA run
===================================

Call ``log_report(report)`` after a command has filled its ``RunReport`` and
enjoy colourful Rich tables in your terminal.
"""

from __future__ import annotations

import math

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from spectra.report import RunReport

# listings longer than this are cut in the terminal (porcelain prints all)
MAX_ROWS = 64


# ────────────────────────────────────────────────────────────────────
# basic formatting helpers
# ────────────────────────────────────────────────────────────────────
def _num(v: float | None, prec: int = 6) -> str:
    if v is None:
        return "[dim]–[/dim]"
    if not math.isfinite(v):
        return f"[yellow]{v}[/yellow]"
    txt = f"{v:.{prec}g}"
    return f"[magenta]{txt}[/magenta]" if v != 0.0 else f"[dim]{txt}[/dim]"


def _status(passed: bool) -> str:
    return "[bold green]PASS[/bold green]" if passed else "[bold red]FAIL[/bold red]"


def _cyan(name: str) -> str:
    return f"[bold cyan]{name}[/bold cyan]"


def panel(tbl: Table, title: str, colour: str) -> Panel:
    return Panel(
        tbl,
        title=f"[bold]{title.upper()}[/bold]",
        title_align="center",
        border_style=colour,
        box=box.ROUNDED,
        width=120,
        padding=(1, 2),
    )


def new_table() -> Table:
    return Table(
        box=box.SIMPLE_HEAD, show_edge=False, expand=True, header_style="white"
    )


# ────────────────────────────────────────────────────────────────────
# PUBLIC
# ────────────────────────────────────────────────────────────────────
def log_report(report: RunReport, *, console: Console | None = None) -> None:
    """Pretty-print a run report to the terminal."""
    con = console or Console()

    # ─── overview ───────────────────────────────────────────────────
    t = new_table()
    t.add_column("Field")
    t.add_column("Value", justify="right")
    t.add_row("Command", _cyan(report.command))
    for k, v in report.inputs.items():
        t.add_row(k, v)
    for p in report.outputs:
        t.add_row("Output", p)
    t.add_section()
    t.add_row("Status", _status(report.passed))
    t.add_row("Exit code", str(report.exit_code))
    con.print("\n", panel(t, "Overview", "green" if report.passed else "red"))

    # ─── metrics ───────────────────────────────────────────────────
    if len(report.metrics):
        t = new_table()
        t.add_column("Metric")
        t.add_column("Value", justify="right")
        for m in report.metrics:
            t.add_row(m.name, _num(m.value))
        con.print(panel(t, "Metrics", "blue"))

    # ─── verdicts ──────────────────────────────────────────────────
    if len(report.verdicts):
        t = new_table()
        t.add_column("Check")
        t.add_column("Value", justify="right")
        t.add_column("Threshold", justify="right")
        t.add_column("Status", justify="center")
        for v in report.verdicts:
            t.add_row(v.name, _num(v.value), _num(v.threshold, 2), _status(v.passed))
        con.print(panel(t, "Verdicts", "yellow"))

    # ─── listings ──────────────────────────────────────────────────
    for listing in report.listings:
        t = new_table()
        for i, h in enumerate(listing.header):
            t.add_column(h, justify="left" if i == 0 else "right")
        for row in listing.rows[:MAX_ROWS]:
            t.add_row(*row)
        if len(listing.rows) > MAX_ROWS:
            t.add_section()
            t.add_row(f"[dim]… {len(listing.rows) - MAX_ROWS} more[/dim]")
        con.print(panel(t, listing.name, "magenta"))

    # ─── error ─────────────────────────────────────────────────────
    if report.error is not None:
        t = new_table()
        t.add_column("Error")
        t.add_row(f"[red]{report.error}[/red]")
        con.print(panel(t, "Error", "red"))

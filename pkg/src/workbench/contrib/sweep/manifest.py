"""Manifest for the sweep command."""

import numpy as np
from rich import box
from rich.console import Console
from rich.progress import track
from rich.table import Table

from src.core.curve_arith import iter_curves, random_curve
from src.services.serialization import field_to_dict, load_field
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="sweep",
    display_name="Sweep",
    description="Cross-check trace, height and point count over every (or --n random) curves",
    icon="≡",
    color="yellow",
    category=CommandCategory.CURVE,
    arguments=[ArgumentSpec("field", "field JSON file (or any curve file over the field)")],
    options=["prec", "n", "seed"],
    menu_order=26,
)


def run(ctx: CommandContext) -> CommandResult:
    from .service import CHECKS, SweepSummary, check_curve

    field_ctx = load_field(ctx.job.files[0], ctx.config)
    prec = ctx.precision(field_ctx.p)
    if ctx.job.n is not None:
        rng = np.random.default_rng(ctx.seed)
        curves = [random_curve(field_ctx, rng) for _ in range(ctx.job.n)]
    else:
        curves = list(iter_curves(field_ctx, ctx.config))

    status = Console(stderr=True)
    summary = SweepSummary()
    for curve in track(curves, description=f"Sweeping {field_ctx}", console=status, transient=True):
        summary.add(check_curve(curve, prec, ctx.config))

    table = Table(title=f"Sweep over {field_ctx}", box=box.ROUNDED, border_style="dim")
    table.add_column("Check", style="bold")
    table.add_column("Failures", justify="right")
    for name in CHECKS:
        failures = summary.failures[name]
        table.add_row(name, f"[red]{failures}[/]" if failures else "[green]0[/]")
    status.print(table)
    status.print(f"{summary.curves} curves: {summary.ordinary} ordinary, {summary.supersingular} supersingular")

    document = {"field": field_to_dict(field_ctx), **summary.to_dict()}
    if summary.mismatches:
        return CommandResult(
            success=False,
            document=document,
            error=f"{summary.mismatches} mismatches",
            exit_code=1,
            data=summary,
        )
    return CommandResult(success=True, document=document, data=summary)

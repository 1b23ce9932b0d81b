"""Manifest for the count-points command."""

from src.core.curve_arith import curve_stats
from src.services.serialization import load_curve, stats_to_dict
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="count-points",
    display_name="Count Points",
    description="Brute-force |E(K)| with trace, class and height",
    icon="#",
    color="yellow",
    category=CommandCategory.CURVE,
    arguments=[ArgumentSpec("curve", "curve JSON file")],
    options=["prec", "threads"],
    menu_order=24,
)


def run(ctx: CommandContext) -> CommandResult:
    curve = load_curve(ctx.job.files[0], ctx.config)
    stats = curve_stats(curve, ctx.precision(curve.ctx.p), ctx.config, ctx.threads)
    return CommandResult(success=True, document=stats_to_dict(stats), data=stats)

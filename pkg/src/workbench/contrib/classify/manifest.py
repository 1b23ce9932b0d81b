"""Manifest for the classify command."""

from src.core.curve_arith import classify
from src.services.serialization import load_curve
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="classify",
    display_name="Classify",
    description="Ordinary or supersingular, from the height of [p]",
    icon="◆",
    color="green",
    category=CommandCategory.CURVE,
    arguments=[ArgumentSpec("curve", "curve JSON file")],
    options=["prec"],
    menu_order=20,
)


def run(ctx: CommandContext) -> CommandResult:
    curve = load_curve(ctx.job.files[0], ctx.config)
    classification, height = classify(curve, ctx.precision(curve.ctx.p), ctx.config)
    return CommandResult(success=True, document={"class": classification.value, "height": height})

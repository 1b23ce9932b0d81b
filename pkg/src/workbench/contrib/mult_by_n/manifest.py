"""Manifest for the mult-by-n command."""

from src.core.formal_group import group_law
from src.core.homomorphism import mult_hom
from src.services.serialization import hom_to_dict, load_curve
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="mult-by-n",
    display_name="Multiplication by n",
    description="The endomorphism [n] of the curve law, with its height",
    icon="×",
    color="blue",
    category=CommandCategory.LAW,
    arguments=[ArgumentSpec("curve", "curve JSON file")],
    options=["prec", "n"],
    menu_order=14,
)


def run(ctx: CommandContext) -> CommandResult:
    n = ctx.require_n()
    curve = load_curve(ctx.job.files[0], ctx.config)
    law = group_law(curve, ctx.precision(curve.ctx.p))
    return CommandResult(success=True, document=hom_to_dict(mult_hom(law, n, ctx.config)))

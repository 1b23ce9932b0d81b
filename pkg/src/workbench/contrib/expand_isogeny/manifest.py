"""Manifest for the expand-isogeny command."""

from src.core.homomorphism import isogeny_to_hom
from src.services.serialization import hom_to_dict, load_curve, load_isogeny
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="expand-isogeny",
    display_name="Expand Isogeny",
    description="Power series U of an isogeny (f1 : f2 : f3) between curves",
    icon="→",
    color="magenta",
    category=CommandCategory.HOMOMORPHISM,
    arguments=[
        ArgumentSpec("curve", "source curve JSON file"),
        ArgumentSpec("isogeny", "isogeny JSON file with 'target' and 'f'"),
    ],
    options=["prec"],
    menu_order=30,
)


def run(ctx: CommandContext) -> CommandResult:
    curve = load_curve(ctx.job.files[0], ctx.config)
    target, polys = load_isogeny(ctx.job.files[1], curve.ctx, ctx.config)
    hom = isogeny_to_hom(polys, curve, target, ctx.precision(curve.ctx.p))
    return CommandResult(success=True, document=hom_to_dict(hom))

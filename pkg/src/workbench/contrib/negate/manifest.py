"""Manifest for the negate command."""

from src.core.formal_group import group_law
from src.core.homomorphism import negation_hom
from src.services.serialization import hom_to_dict, load_curve
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="negate",
    display_name="Negation",
    description="The inverse series iota with F(tau, iota) = 0",
    icon="−",
    color="blue",
    category=CommandCategory.LAW,
    arguments=[ArgumentSpec("curve", "curve JSON file")],
    options=["prec"],
    menu_order=16,
)


def run(ctx: CommandContext) -> CommandResult:
    curve = load_curve(ctx.job.files[0], ctx.config)
    law = group_law(curve, ctx.precision(curve.ctx.p))
    return CommandResult(success=True, document=hom_to_dict(negation_hom(law, ctx.config)))

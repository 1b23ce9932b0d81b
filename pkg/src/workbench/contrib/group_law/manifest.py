"""Manifest for the group-law command."""

from src.core.formal_group import group_law
from src.services.serialization import law_to_dict, load_curve
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="group-law",
    display_name="Group Law",
    description="Formal group law F(X, Y) of a curve to total degree N",
    icon="⊕",
    color="cyan",
    category=CommandCategory.LAW,
    arguments=[ArgumentSpec("curve", "curve JSON file")],
    options=["prec"],
    menu_order=10,
)


def run(ctx: CommandContext) -> CommandResult:
    curve = load_curve(ctx.job.files[0], ctx.config)
    law = group_law(curve, ctx.precision(curve.ctx.p))
    return CommandResult(success=True, document=law_to_dict(law))

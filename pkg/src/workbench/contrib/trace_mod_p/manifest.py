"""Manifest for the trace-mod-p command."""

from src.core.curve_arith import trace_mod_p
from src.services.serialization import load_curve
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="trace-mod-p",
    display_name="Trace mod p",
    description="Trace of Frobenius mod p, read off the formal group",
    icon="τ",
    color="green",
    category=CommandCategory.CURVE,
    arguments=[ArgumentSpec("curve", "curve JSON file")],
    options=["prec"],
    menu_order=22,
)


def run(ctx: CommandContext) -> CommandResult:
    curve = load_curve(ctx.job.files[0], ctx.config)
    residue = trace_mod_p(curve, ctx.precision(curve.ctx.p), ctx.config)
    return CommandResult(success=True, document={"p": curve.ctx.p, "trace_mod_p": residue.rep[0]})

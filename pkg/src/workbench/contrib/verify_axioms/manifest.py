"""Manifest for the verify-axioms command."""

from src.core.formal_group import group_law, verify_axioms
from src.services.serialization import axiom_report_to_dict, load_curve
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="verify-axioms",
    display_name="Verify Axioms",
    description="Check identity, commutativity and associativity of the curve law",
    icon="✓",
    color="green",
    category=CommandCategory.LAW,
    arguments=[ArgumentSpec("curve", "curve JSON file")],
    options=["prec"],
    menu_order=12,
)


def run(ctx: CommandContext) -> CommandResult:
    """Build the law and report the first failing axiom, if any.

    A failed axiom is a domain error: the document is still written and
    the exit code is 1.
    """
    curve = load_curve(ctx.job.files[0], ctx.config)
    prec = ctx.precision(curve.ctx.p)
    report = verify_axioms(group_law(curve, prec), prec)
    document = axiom_report_to_dict(report)
    if report.ok:
        return CommandResult(success=True, document=document)
    return CommandResult(
        success=False,
        document=document,
        error=f"{report.failing_axiom.value} fails at monomial {report.failing_monomial}",
        exit_code=1,
    )

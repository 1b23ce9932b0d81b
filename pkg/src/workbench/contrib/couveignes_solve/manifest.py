"""Manifest for the couveignes-solve command."""

from src.services.serialization import enumeration_to_dict
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

MANIFEST = CommandManifest(
    name="couveignes-solve",
    display_name="Solve Relations",
    description="Every truncated homomorphism u_1 .. u_bound from F to F'",
    icon="⋯",
    color="magenta",
    category=CommandCategory.HOMOMORPHISM,
    arguments=[
        ArgumentSpec("curve", "source curve JSON file"),
        ArgumentSpec("target", "target curve JSON file (default: the source)", required=False),
    ],
    options=["prec", "bound", "solve_degree", "threads"],
    menu_order=32,
)


def run(ctx: CommandContext) -> CommandResult:
    from .service import build_relation_ctx, enumerate_for_job

    job = build_relation_ctx(ctx)
    result = enumerate_for_job(ctx, job)
    message = ""
    if result.splitting_deficit:
        message = (
            f"{result.splitting_deficit} of {result.expected} solutions need a larger solve field; "
            "try --solve-degree 0"
        )
    return CommandResult(success=True, document=enumeration_to_dict(result), message=message, data=result)

"""Manifest for the couveignes-certify command."""

import logging

from src.core.couveignes import RelationCtx, certify_solution, relation_residuals
from src.core.errors import UsageError
from src.services.serialization import field_to_dict, series_to_dict, solution_to_list
from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
)

logger = logging.getLogger(__name__)

MANIFEST = CommandManifest(
    name="couveignes-certify",
    display_name="Certify Solutions",
    description="Extend each solution as far as the precision allows and check it is a homomorphism",
    icon="✔",
    color="magenta",
    category=CommandCategory.HOMOMORPHISM,
    arguments=[
        ArgumentSpec("curve", "source curve JSON file"),
        ArgumentSpec("target", "target curve JSON file (default: the source)", required=False),
    ],
    options=["prec", "bound", "solve_degree", "n", "threads"],
    menu_order=34,
)


def run(ctx: CommandContext) -> CommandResult:
    """Enumerate to --bound, then certify every solution (or only the --n-th).

    Solutions are extended to the largest degree the law precision
    supports; raise --prec to certify further.
    """
    from src.workbench.contrib.couveignes_solve.service import build_relation_ctx, enumerate_for_job

    job = build_relation_ctx(ctx)
    result = enumerate_for_job(ctx, job)
    working = job.relation.extend(result.embedding)
    extend_to = max(working.max_degree, job.bound)

    indexed = list(enumerate(result.solutions, 1))
    if ctx.job.n is not None:
        if not 1 <= ctx.job.n <= len(indexed):
            raise UsageError(f"--n must lie in [1, {len(indexed)}], got {ctx.job.n}")
        indexed = [indexed[ctx.job.n - 1]]

    certificates = []
    for index, solution in indexed:
        hom = certify_solution(working, solution, extend_to, ctx.config)
        relations = working if hom.ctx == working.field else RelationCtx.create(hom.source, hom.target, ctx.config)
        residuals = relation_residuals(relations, hom.coefficients()[1:], extend_to)
        certificates.append({
            "solution": index,
            "prefix": solution_to_list(solution),
            "field": field_to_dict(hom.ctx),
            "U": series_to_dict(hom.U),
            "checked_to_degree": hom.checked_to,
            "residuals_zero": all(r.is_zero() for _, r in residuals),
        })
        logger.debug(f"Solution {index} certified to degree {hom.checked_to}")

    document = {
        "bound": job.bound,
        "certified_to": extend_to,
        "solve_field_degree": result.solve_degree,
        "certificates": certificates,
        "splitting_deficit": result.splitting_deficit,
    }
    if not all(c["residuals_zero"] for c in certificates):
        return CommandResult(success=False, document=document, error="Nonzero relation residual", exit_code=1)
    return CommandResult(success=True, document=document)

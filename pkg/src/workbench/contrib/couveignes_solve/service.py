"""
Shared setup for the relation commands: load F and F', pick a law
precision that covers the requested bound, and run the enumeration the
job asks for.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from src.core.config import EngineConfig
from src.core.couveignes import (
    EnumerationResult,
    RelationCtx,
    enumerate_truncations,
    required_precision,
    solve_with_growth,
)
from src.core.curve_arith import curve_height
from src.core.errors import BoundExceeded, UsageError
from src.core.formal_group import WeierstrassCurve, group_law
from src.core.galois_field import find_extension
from src.services.serialization import load_curve
from src.workbench.contract import CommandContext


logger = logging.getLogger(__name__)


@dataclass
class RelationJob:
    """A relation context with the bound it was sized for."""
    relation: RelationCtx
    bound: int
    source: WeierstrassCurve
    target: WeierstrassCurve


def default_bound(p: int) -> int:
    """Last index below tau^(p^2), the first coefficient a height-2 law can branch on twice."""
    return p * p - 1


def load_pair(ctx: CommandContext) -> tuple[WeierstrassCurve, WeierstrassCurve]:
    """(source, target) curves; the target defaults to the source."""
    source_path, target_path = ctx.job.files[0], ctx.job.files[1]
    source = load_curve(source_path, ctx.config)
    if target_path is None:
        return source, source
    target = load_curve(target_path, ctx.config)
    if target.ctx != source.ctx:
        raise UsageError(f"Source curve over {source.ctx}, target over {target.ctx}")
    return source, target


def law_precision(ctx: CommandContext, p: int, q: int, degree: int) -> int:
    prec = max(ctx.precision(p), required_precision(degree, p, q))
    if prec > ctx.config.max_precision:
        raise BoundExceeded(
            f"Degree {degree} needs precision {prec}, configured bound is {ctx.config.max_precision}"
        )
    return prec


def build_relation_ctx(ctx: CommandContext) -> RelationJob:
    source, target = load_pair(ctx)
    p = source.ctx.p
    bound = ctx.job.bound if ctx.job.bound is not None else default_bound(p)
    q = p ** curve_height(source, config=ctx.config)
    prec = law_precision(ctx, p, q, bound)
    logger.debug(f"Relation job: bound {bound}, q = {q}, law precision {prec}")
    relation = RelationCtx.create(group_law(source, prec), group_law(target, prec), ctx.config)
    return RelationJob(relation, bound, source, target)


def enumerate_for_job(
    ctx: CommandContext,
    job: RelationJob,
    config: Optional[EngineConfig] = None,
) -> EnumerationResult:
    """--solve-degree m enumerates over GF(p^(n*m)); 0 grows the field until every step splits."""
    config = config or ctx.config
    degree = ctx.job.solve_degree
    if degree == 0:
        return solve_with_growth(job.relation, job.bound, 1, config, ctx.threads)
    _, embedding = find_extension(job.relation.field, degree or 1, config)
    return enumerate_truncations(job.relation, job.bound, embedding, config, ctx.threads)

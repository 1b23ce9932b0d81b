"""
Curve sweep - every check that ties the formal group to the point count,
run over all curves of a field or a seeded sample.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

from src.core.config import DEFAULT_CONFIG, EngineConfig
from src.core.curve_arith import count_points, curve_height, supersingular_orders, trace_mod_p
from src.core.formal_group import WeierstrassCurve, curve_negation, generic_negation, group_law
from src.services.serialization import curve_to_dict


logger = logging.getLogger(__name__)

CHECKS = ("trace", "height", "orders", "hasse", "negation")


@dataclass
class CurveCheck:
    curve: WeierstrassCurve
    order: int
    height: int
    trace_mod_p: int
    failed: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed


def check_curve(curve: WeierstrassCurve, prec: int, config: Optional[EngineConfig] = None) -> CurveCheck:
    """Compare the formal-group invariants of one curve with its point count."""
    config = config or DEFAULT_CONFIG
    ctx = curve.ctx
    p, q = ctx.p, ctx.order
    law = group_law(curve, prec)
    order = count_points(curve, config)
    height = curve_height(curve, prec, config, law)
    residue = trace_mod_p(curve, prec, config, law).rep[0]
    trace = q + 1 - order

    check = CurveCheck(curve, order, height, residue)
    if residue != trace % p:
        check.failed.append("trace")
    if (height == 2) != (order % p == 1):
        check.failed.append("height")
    if height == 2 and order not in supersingular_orders(p, ctx.n):
        check.failed.append("orders")
    if trace * trace > 4 * q:
        check.failed.append("hasse")
    if generic_negation(law) != curve_negation(curve, prec):
        check.failed.append("negation")
    if check.failed:
        logger.warning(f"{curve}: failed {', '.join(check.failed)}")
    return check


@dataclass
class SweepSummary:
    curves: int = 0
    ordinary: int = 0
    supersingular: int = 0
    failures: dict[str, int] = field(default_factory=lambda: {name: 0 for name in CHECKS})
    first_failures: list[CurveCheck] = field(default_factory=list)

    @property
    def mismatches(self) -> int:
        return sum(self.failures.values())

    def add(self, check: CurveCheck, keep: int = 5) -> None:
        self.curves += 1
        if check.height == 2:
            self.supersingular += 1
        else:
            self.ordinary += 1
        for name in check.failed:
            self.failures[name] += 1
        if check.failed and len(self.first_failures) < keep:
            self.first_failures.append(check)

    def to_dict(self) -> dict:
        return {
            "curves": self.curves,
            "ordinary": self.ordinary,
            "supersingular": self.supersingular,
            "failures": dict(self.failures),
            "mismatches": self.mismatches,
            "first_failures": [
                {"curve": curve_to_dict(c.curve), "order": c.order, "height": c.height,
                 "trace_mod_p": c.trace_mod_p, "failed": list(c.failed)}
                for c in self.first_failures
            ],
        }


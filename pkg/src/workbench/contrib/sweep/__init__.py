"""
Curve sweep command.
"""

from .service import CHECKS, CurveCheck, SweepSummary, check_curve

__all__ = ["CHECKS", "CurveCheck", "SweepSummary", "check_curve"]

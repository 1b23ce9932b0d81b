"""
Core module - finite fields, truncated power series, formal group laws,
their homomorphisms and the curves they come from.
"""

from .types import INFINITY, Axiom, Classification, LawKind, OutputFormat
from .config import DEFAULT_CONFIG, EngineConfig, default_precision
from .galois_field import Embedding, FieldCtx, FieldElement, find_extension
from .power_series import TruncSeries
from .formal_group import FormalGroupLaw, WeierstrassCurve, group_law
from .homomorphism import FglHom
from .couveignes import PartialSolution, RelationCtx
from .curve_arith import CurveStats, ProjectivePoint

__all__ = [
    "INFINITY",
    "Axiom",
    "Classification",
    "LawKind",
    "OutputFormat",
    "DEFAULT_CONFIG",
    "EngineConfig",
    "default_precision",
    "Embedding",
    "FieldCtx",
    "FieldElement",
    "find_extension",
    "TruncSeries",
    "FormalGroupLaw",
    "WeierstrassCurve",
    "group_law",
    "FglHom",
    "PartialSolution",
    "RelationCtx",
    "CurveStats",
    "ProjectivePoint",
]

"""
Relation solver command.
"""

from .service import build_relation_ctx, enumerate_for_job

__all__ = ["build_relation_ctx", "enumerate_for_job"]

"""
Engine configuration: the bounds every core operation checks against.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class EngineConfig:
    """Configurable limits and switches for the core algebra."""
    max_prime: int = 13
    max_field_order: int = 2 ** 20
    enumeration_bound: int = 2 ** 20
    max_precision: int = 512
    max_solve_degree: int = 24
    solution_budget: int = 4096
    default_seed: int = 1998
    threads: int = 1
    cross_check: bool = False


DEFAULT_CONFIG = EngineConfig()


def default_precision(p: int) -> int:
    """Precision that exposes the tau^(p^2) coefficient of [p]."""
    return max(p * p + 2, 16)

"""
Core types and enumerations.
"""

from enum import Enum
from functools import total_ordering


@total_ordering
class _Infinity:
    """Order or height of the zero series: larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinite(value) -> bool:
    return value is INFINITY


class LawKind(Enum):
    """Where a formal group law came from."""
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"
    CURVE = "curve"
    TWIST = "twist"
    SERIES = "series"           # user-supplied series, no known origin


class Classification(Enum):
    ORDINARY = "ordinary"
    SUPERSINGULAR = "supersingular"


class Axiom(Enum):
    IDENTITY = "identity"
    COMMUTATIVITY = "commutativity"
    ASSOCIATIVITY = "associativity"


class OutputFormat(Enum):
    JSON = "json"
    TEXT = "text"

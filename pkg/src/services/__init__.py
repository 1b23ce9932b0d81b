"""
Services module - configuration loading and document serialization shared
by the commands.
"""

from .serialization import dumps, load_curve, load_field, parse, render
from .settings import load_config

__all__ = ["dumps", "load_config", "load_curve", "load_field", "parse", "render"]

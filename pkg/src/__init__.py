"""
fglaw - formal group laws of elliptic curves over finite fields.
"""

__version__ = "1.0.0"
__author__ = "fglaw contributors"

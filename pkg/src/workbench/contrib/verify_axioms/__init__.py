"""
Axiom verification command.
"""

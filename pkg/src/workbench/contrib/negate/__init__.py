"""
Negation series command.
"""

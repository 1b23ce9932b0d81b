"""
Multiplication-by-n command.
"""

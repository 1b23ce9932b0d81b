"""
Point counting command.
"""

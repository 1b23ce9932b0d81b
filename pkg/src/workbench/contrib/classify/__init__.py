"""
Curve classification command.
"""

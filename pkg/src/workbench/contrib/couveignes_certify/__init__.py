"""
Solution certification command.
"""

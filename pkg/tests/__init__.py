"""
fglaw test suite.
"""

"""
Group law command.
"""

"""
Isogeny expansion command.
"""

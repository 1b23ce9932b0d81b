"""
Trace of Frobenius mod p command.
"""

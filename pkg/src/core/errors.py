"""
Exception hierarchy for the formal group toolkit.

Every error carries the exit code the command line reports for it:
1 for domain errors, 2 for usage and configuration errors.
"""


class FglawError(Exception):
    """Base class for all library errors."""
    exit_code = 1


class UsageError(FglawError):
    """Bad command line input or unreadable input file."""
    exit_code = 2


class ConfigError(UsageError):
    """Malformed configuration value."""


# Field arithmetic

class CtxMismatch(FglawError, ValueError):
    """Operands live in different fields, or series in different rings."""


class DivisionByZero(FglawError, ZeroDivisionError):
    """Division by the zero element."""


class BoundExceeded(FglawError):
    """A configured size bound would be exceeded."""


class InvalidField(FglawError, ValueError):
    """Characteristic not prime, or modulus not monic irreducible."""


class NoIrreducibleFound(FglawError):
    """Exhaustive search found no irreducible polynomial (search bug)."""


# Power series

class ArityMismatch(FglawError, ValueError):
    """Series with different numbers of variables were combined."""


class NonzeroConstantTerm(FglawError, ValueError):
    """Composition argument has a nonzero constant term."""


class NonUnit(FglawError, ValueError):
    """Series is not invertible in the truncated ring."""


class PrecisionExceeded(FglawError, IndexError):
    """Coefficient requested at or above the stored precision."""


class InsufficientPrecision(FglawError):
    """The available precision cannot decide the requested quantity."""


# Formal groups and homomorphisms

class SingularCurve(FglawError, ValueError):
    """Weierstrass equation with zero discriminant."""


class NotAFormalGroupLaw(FglawError, ValueError):
    """Series violates the normal form F(X,0)=X, F(0,Y)=Y or symmetry."""


class LawMismatch(FglawError, ValueError):
    """Homomorphisms with incompatible source or target laws."""


class OriginNotFixed(FglawError, ValueError):
    """Isogeny triple does not send the origin (0,1,0) to itself."""


class NotAHomomorphism(FglawError):
    """Series fails the homomorphism identity."""


# Relation solver

class NoUnitBinomial(FglawError):
    """No binomial coefficient C(i, m) is a unit mod p (index is a p-power)."""


class RelationInconsistent(FglawError):
    """A solved coefficient leaves a nonzero residual."""


class BudgetExceeded(FglawError):
    """Enumeration or field growth exceeded its budget."""


class NoBranchSurvives(FglawError):
    """Certification found no branch extending to a homomorphism."""


class HeightNotOne(FglawError, ValueError):
    """Rationality filtering requested for a law of height other than 1."""


class HeightMismatch(FglawError, ValueError):
    """Source and target laws have different heights."""


# Curves

class HypothesisFailed(FglawError):
    """Chart formula hypothesis (t1 != t2, t != 0, A != 0) does not hold."""


class HeightOutOfRange(FglawError):
    """Elliptic formal group of height other than 1 or 2."""


class ClassificationMismatch(FglawError):
    """Height disagrees with the point count congruence."""


class FormulaMismatch(FglawError):
    """Two independent formulas for the same series disagree."""

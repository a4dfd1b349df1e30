"""Exception hierarchy.

Every error raised by the numerical routines derives from
:class:`HypergeometricError`, so callers (and the CLI) can report the
structured name via ``type(err).__name__``.
"""


class HypergeometricError(ValueError):
    """Base class for domain and convergence failures."""


class GammaPole(HypergeometricError):
    pass


class DenominatorPole(HypergeometricError):
    pass


class NoConvergence(HypergeometricError):
    pass


class OutsideDisk(HypergeometricError):
    pass


class DegenerateConnection(HypergeometricError):
    pass


class BranchCut(HypergeometricError):
    pass


class MaxLevelExceeded(HypergeometricError):
    pass


class NonFiniteIntegrand(HypergeometricError):
    pass


class OutsideDomain(HypergeometricError):
    pass


class DegenerateCase(HypergeometricError):
    pass


class ConstraintViolation(HypergeometricError):
    pass


class NoApplicableMethod(HypergeometricError):
    pass


class DomainViolation(HypergeometricError):
    pass


class SectorViolation(HypergeometricError):
    pass


class IntegerDegeneracy(HypergeometricError):
    pass


class ShapeViolation(HypergeometricError):
    pass

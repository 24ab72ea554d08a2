"""Exception types raised across the package."""


class RBLSEError(Exception):
    """Base class for all errors raised by rblse."""


class DimensionMismatch(RBLSEError, ValueError):
    pass


class StructureViolation(RBLSEError, ValueError):
    """A matrix claimed to be a real/complex representation is off-pattern."""


class RankDeficientConstraint(RBLSEError):
    """The constraint matrix does not have full row rank."""


class PreconditionViolated(RBLSEError, ValueError):
    """Problem dimensions violate m >= n + d or the constraint row bound."""


class RankLostUnderPerturbation(RBLSEError):
    """A perturbed constraint stack no longer has full row rank."""


class ProblemFileError(RBLSEError, ValueError):
    """Malformed, inconsistent or unsupported problem/solution file."""

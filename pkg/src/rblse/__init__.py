"""Reduced biquaternion equality-constrained least squares."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DimensionMismatch,
    PreconditionViolated,
    ProblemFileError,
    RankDeficientConstraint,
    RankLostUnderPerturbation,
    RBLSEError,
    StructureViolation,
)
from .kernels import BACKEND  # noqa: E402
from .rbq import RBMatrix, RBScalar, frobenius_norm, mat_add, mat_mul, rb_mul, rb_norm, scale  # noqa: E402
from .solvers import RBLSEProblem, RBLSESolution, flop_estimate, solve_complex, solve_real  # noqa: E402

__all__ = [
    "__version__",
    "BACKEND",
    "RBMatrix",
    "RBScalar",
    "RBLSEProblem",
    "RBLSESolution",
    "rb_mul",
    "rb_norm",
    "mat_mul",
    "mat_add",
    "scale",
    "frobenius_norm",
    "solve_real",
    "solve_complex",
    "flop_estimate",
    "RBLSEError",
    "DimensionMismatch",
    "StructureViolation",
    "RankDeficientConstraint",
    "PreconditionViolated",
    "RankLostUnderPerturbation",
    "ProblemFileError",
]

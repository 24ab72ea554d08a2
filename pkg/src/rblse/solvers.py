"""Real and complex solutions of the reduced biquaternion LSE problem.

Given RB matrices ``A (m x n)``, ``B (m x d)``, ``C (p x n)``, ``D (p x d)``,
a real (complex) solution minimizes ``||A X - B||_F`` subject to ``C X = D``
over real (complex) ``X``.  For such ``X`` the RB residual has the same norm
as the residual of the stacked first-block-column problem::

    ||A X - B||_F == ||A^R_c X - B^R_c||_F     (X real)
    ||A X - B||_F == ||A^C_c X - B^C_c||_F     (X complex)

and ``C X = D`` is equivalent to the stacked constraint, so each RB problem
reduces to one field-level LSE problem solved by :func:`rblse.lse.solve_lse`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import DimensionMismatch, PreconditionViolated
from .lse import LSEInstance, LSEKernelSolution, solve_lse
from .rbq import RBMatrix, frobenius_norm, mat_mul
from .representation import complex_rep_col, real_rep_col

__all__ = [
    "RBLSEProblem",
    "RBLSESolution",
    "Mode",
    "solve_real",
    "solve_complex",
    "solve",
    "stacked_instance",
    "embed_solution",
    "residual_metrics",
    "flop_estimate",
]

Mode = Literal["real", "complex"]
MODES = ("real", "complex")


@dataclass(frozen=True)
class RBLSEProblem:
    A: RBMatrix
    B: RBMatrix
    C: RBMatrix
    D: RBMatrix
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        A, B, C, D = self.A, self.B, self.C, self.D
        if A.n != C.n:
            raise DimensionMismatch(f"A has {A.n} columns but C has {C.n}")
        if A.m != B.m:
            raise DimensionMismatch(f"A has {A.m} rows but B has {B.m}")
        if C.m != D.m:
            raise DimensionMismatch(f"C has {C.m} rows but D has {D.m}")
        if B.n != D.n:
            raise DimensionMismatch(f"B has {B.n} columns but D has {D.n}")

    @property
    def dims(self) -> tuple[int, int, int, int]:
        """``(m, n, p, d)``."""
        return self.A.m, self.A.n, self.C.m, self.B.n

    def check_preconditions(self, mode: Mode) -> None:
        m, n, p, d = self.dims
        if d < 1:
            raise PreconditionViolated("d must be at least 1")
        if m < n + d:
            raise PreconditionViolated(f"need m >= n + d, got m={m}, n={n}, d={d}")
        rows = 4 * p if mode == "real" else 2 * p
        if rows > n:
            raise PreconditionViolated(
                f"{mode} mode needs {'4p' if mode == 'real' else '2p'} <= n, got p={p}, n={n}"
            )


@dataclass
class RBLSESolution:
    mode: str
    X: np.ndarray
    metrics: tuple[float, float]
    seconds: float
    kernel: LSEKernelSolution | None = field(default=None, repr=False)

    @property
    def metric_names(self) -> tuple[str, str]:
        return ("eps1", "eps2") if self.mode == "real" else ("eps3", "eps4")


def stacked_instance(prob: RBLSEProblem, mode: Mode) -> LSEInstance:
    """The field-level LSE problem whose solution is the requested RB solution."""
    if mode == "real":
        rep = real_rep_col
    elif mode == "complex":
        rep = complex_rep_col
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return LSEInstance(rep(prob.A), rep(prob.B), rep(prob.C), rep(prob.D))


def _solve(prob: RBLSEProblem, mode: Mode, rank_tol: float | None) -> RBLSESolution:
    prob.check_preconditions(mode)
    start = time.perf_counter()
    inst = stacked_instance(prob, mode)
    ksol = solve_lse(inst, rank_tol=rank_tol)
    seconds = time.perf_counter() - start
    X = ksol.X
    return RBLSESolution(mode, X, residual_metrics(prob, X, mode), seconds, ksol)


def solve_real(prob: RBLSEProblem, rank_tol: float | None = None) -> RBLSESolution:
    """Minimum-norm real solution ``X`` (n x d, float)."""
    return _solve(prob, "real", rank_tol)


def solve_complex(prob: RBLSEProblem, rank_tol: float | None = None) -> RBLSESolution:
    """Minimum-norm complex solution ``X`` (n x d, complex)."""
    return _solve(prob, "complex", rank_tol)


def solve(prob: RBLSEProblem, mode: Mode, rank_tol: float | None = None) -> RBLSESolution:
    return _solve(prob, mode, rank_tol)


def embed_solution(X) -> RBMatrix:
    return RBMatrix.from_real(X)


def _log10(x: float) -> float:
    with np.errstate(divide="ignore"):
        return float(np.log10(x))


def residual_metrics(prob: RBLSEProblem, X, mode: Mode | None = None) -> tuple[float, float]:
    """``(log10 ||A X - (B + R)||_F, log10 ||C X - D||_F)`` with ``R = A X - B``.

    ``R`` is the optimal residual evaluated once from the computed ``X``, so
    the first number measures how consistently the residual is represented
    in floating point.  An exactly zero norm gives ``-inf``.  ``mode`` is
    accepted for symmetry with the solvers; the RB product handles both.
    """
    Xrb = embed_solution(X)
    AX = mat_mul(prob.A, Xrb)
    R = AX - prob.B
    eps_a = _log10(frobenius_norm(AX - (prob.B + R)))
    eps_b = _log10(frobenius_norm(mat_mul(prob.C, Xrb) - prob.D))
    return eps_a, eps_b


def flop_estimate(mode: Mode, m: int, n: int, p: int, d: int) -> int:
    """Closed-form flop count of the real or complex solution algorithm."""
    if min(m, n, p, d) <= 0:
        raise ValueError("dimensions must be positive")
    if mode == "real":
        if 4 * p > n:
            raise ValueError("real mode needs 4p <= n")
        f = n - 4 * p
        return (32 * n * p**2 + 8 * m * n**2 - 4 * m * n + 24 * m * f**2 + 10 * f**3
                + 16 * p**2 * d + 32 * m * p * d - 4 * m * d + 4 * m * d
                + 8 * m * f * d + 2 * n**2 * d)
    if mode == "complex":
        if 2 * p > n:
            raise ValueError("complex mode needs 2p <= n")
        f = n - 2 * p
        return (32 * n * p**2 + 16 * m * n**2 - 4 * m * n + 48 * m * f**2 + 40 * f**3
                + 16 * p**2 * d + 10 * p * d + 32 * m * p * d - 4 * m * d + 4 * m * d
                + 16 * m * f * d + 8 * n**2 * d)
    raise ValueError(f"unknown mode {mode!r}")

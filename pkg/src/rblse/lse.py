"""Minimum-norm equality-constrained least squares over R or C.

Solves ``min ||A X - B||_F  s.t.  C X = D`` for ``C`` of full row rank by
the QR method: factor ``C^H = Q [R; 0]``, split ``A Q = [P1, P2]`` and set

    X = Q [ R^{-H} D ;  P2^+ (B - P1 R^{-H} D) ].

Because ``Q`` is unitary and the first block is pinned by the constraint,
taking the minimum-norm ``P2^+`` solution for the second block makes ``X``
the minimum-norm minimizer overall.

:func:`lse_oracle` solves the same problem by the nullspace method from a
full SVD and shares no code with :func:`solve_lse`; it exists to check it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DimensionMismatch, RankDeficientConstraint

__all__ = [
    "LSEInstance",
    "LSEKernelSolution",
    "qr_full",
    "pinv",
    "default_tol",
    "rank_check",
    "solve_lse",
    "lse_oracle",
]

EPS = np.finfo(np.float64).eps


def _as_matrix(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim == 1:
        M = M[:, None]
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {M.shape}")
    return M.astype(np.complex128 if np.iscomplexobj(M) else np.float64, copy=False)


@dataclass(frozen=True)
class LSEInstance:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A, B, C, D = (_as_matrix(M) for M in (self.A, self.B, self.C, self.D))
        if A.shape[1] != C.shape[1]:
            raise DimensionMismatch(f"A has {A.shape[1]} columns but C has {C.shape[1]}")
        if A.shape[0] != B.shape[0]:
            raise DimensionMismatch(f"A has {A.shape[0]} rows but B has {B.shape[0]}")
        if C.shape[0] != D.shape[0]:
            raise DimensionMismatch(f"C has {C.shape[0]} rows but D has {D.shape[0]}")
        if B.shape[1] != D.shape[1]:
            raise DimensionMismatch(f"B has {B.shape[1]} columns but D has {D.shape[1]}")
        if C.shape[0] > C.shape[1]:
            raise DimensionMismatch(
                f"C is {C.shape[0]}x{C.shape[1]}; full row rank needs rows <= columns"
            )
        for name, M in zip("ABCD", (A, B, C, D)):
            object.__setattr__(self, name, M)

    @property
    def is_complex(self) -> bool:
        return any(np.iscomplexobj(M) for M in (self.A, self.B, self.C, self.D))

    @property
    def dims(self) -> tuple[int, int, int, int]:
        """``(m', n', p', d)``."""
        return self.A.shape[0], self.A.shape[1], self.C.shape[0], self.B.shape[1]


@dataclass
class LSEKernelSolution:
    X: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    P1: np.ndarray
    P2: np.ndarray
    residual_norm: float
    constraint_violation: float
    diagnostics: dict = field(default_factory=dict)


def qr_full(M):
    """Full QR ``M = Q R`` (``Q`` square); ``diag(R)`` is real and nonnegative."""
    return kernels.householder_qr(M)


def default_tol(M, smax: float | None = None) -> float:
    M = np.asarray(M)
    if smax is None:
        smax = float(np.linalg.norm(M, 2)) if M.size else 0.0
    return max(M.shape) * EPS * smax


def pinv(M, tol: float | None = None) -> np.ndarray:
    """Moore-Penrose inverse from the SVD.

    Singular values ``<= tol`` are treated as zero; the default tolerance is
    ``max(k, l) * eps * sigma_max``.
    """
    M = _as_matrix(M)
    k, l = M.shape
    if M.size == 0:
        return np.zeros((l, k), dtype=M.dtype)
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    if tol is None:
        tol = max(k, l) * EPS * s[0]
    keep = s > tol
    return (Vh[keep].conj().T / s[keep]) @ U[:, keep].conj().T


def rank_check(C, tol: float | None = None) -> bool:
    """True iff the ``p' x n'`` matrix ``C`` has numerically full row rank."""
    C = _as_matrix(C)
    p, n = C.shape
    if p > n:
        return False
    if p == 0:
        return True
    s = np.linalg.svd(C, compute_uv=False)
    if tol is None:
        tol = max(p, n) * EPS * s[0]
    return bool(s[-1] > tol)


def solve_lse(inst: LSEInstance, rank_tol: float | None = None) -> LSEKernelSolution:
    A, B, C, D = inst.A, inst.B, inst.C, inst.D
    if not rank_check(C, rank_tol):
        raise RankDeficientConstraint(f"constraint matrix {C.shape} is not of full row rank")
    p = C.shape[0]
    H = C.conj().T
    Q, Rfull = qr_full(H)
    R = Rfull[:p, :p]
    dtype = np.result_type(A, B, C, D)
    # R^H Y = D by forward substitution on the lower-triangular R^H
    Y = kernels.forward_substitution(R.conj().T, D.astype(np.result_type(dtype, R), copy=False))
    AQ = A @ Q
    P1, P2 = AQ[:, :p], AQ[:, p:]
    rhs = B - P1 @ Y
    Z = pinv(P2) @ rhs
    X = Q @ np.vstack([Y, Z])
    return LSEKernelSolution(
        X=X,
        Q=Q,
        R=R,
        P1=P1,
        P2=P2,
        residual_norm=float(np.linalg.norm(A @ X - B)),
        constraint_violation=float(np.linalg.norm(C @ X - D)),
        diagnostics={"min_abs_diag_R": float(np.min(np.abs(np.diag(R)), initial=np.inf))},
    )


def lse_oracle(inst: LSEInstance, rank_tol: float | None = None) -> np.ndarray:
    """Nullspace-method solution ``C^+ D + N (A N)^+ (B - A C^+ D)``."""
    A, B, C, D = inst.A, inst.B, inst.C, inst.D
    p, n = C.shape
    _, s, Vh = np.linalg.svd(C, full_matrices=True)
    if p and s[-1] <= (max(p, n) * EPS * s[0] if rank_tol is None else rank_tol):
        raise RankDeficientConstraint(f"constraint matrix {C.shape} is not of full row rank")
    C_pinv = np.linalg.pinv(C)
    N = Vh[p:].conj().T
    X0 = C_pinv @ D
    return X0 + N @ (np.linalg.pinv(A @ N) @ (B - A @ X0))

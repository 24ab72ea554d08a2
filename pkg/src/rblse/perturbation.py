"""Data perturbations and first-order forward-error bounds.

With stacked data ``(Ac, Bc, Cc, Dc)`` (real or complex first block columns)
and solution ``X``, define

    P   = I - Cc^+ Cc                     (projector onto null(Cc))
    L   = (I - (Ac P)^+ Ac) Cc^+
    K_B = ||Ac||_F ||(Ac P)^+||_2
    K_A = ||Cc||_F ||L||_2
    R   = Bc - Ac X

and the relative forward error under a normwise perturbation of size ``eps``
is bounded, to first order, by

    U = eps * ( K_A (||Dc|| / (||Cc|| ||X||) + 1)
              + K_B (||Bc|| / (||Ac|| ||X||) + 1)
              + K_B^2 (||Cc|| / ||Ac|| * ||Ac L||_2 + 1) ||R|| / (||Ac|| ||X||) )

(Frobenius norms unless marked ``_2``).  The O(eps^2) remainder is dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import DimensionMismatch, RankLostUnderPerturbation
from .lse import pinv, rank_check
from .rbq import RBMatrix, frobenius_norm
from .solvers import MODES, RBLSEProblem, solve, stacked_instance

__all__ = [
    "PerturbationSpec",
    "PerturbationReport",
    "perturb",
    "measure_eps",
    "bound_real",
    "bound_complex",
    "bound",
    "forward_error",
    "perturbation_trial",
]


@dataclass(frozen=True)
class PerturbationSpec:
    eps: float
    seed: int = 0

    def __post_init__(self):
        if not self.eps >= 0:
            raise ValueError(f"eps must be nonnegative, got {self.eps}")


@dataclass
class PerturbationReport:
    mode: str
    eps: float
    bound: float
    K_A: float
    K_B: float
    L_norm2: float
    AL_norm2: float
    P: np.ndarray = field(repr=False)
    R: np.ndarray = field(repr=False)
    ratios: dict = field(default_factory=dict)
    forward_error: float | None = None
    relative: bool = True
    expected_rank: int = 0
    numerical_rank: int = 0

    @property
    def rank_ok(self) -> bool:
        return self.expected_rank == self.numerical_rank

    @property
    def within_bound(self) -> bool | None:
        if self.forward_error is None:
            return None
        return self.forward_error <= self.bound


def _random_direction(shape: tuple[int, int], seed: int, name: str) -> RBMatrix:
    E = rng.stream(seed, name).uniform(-1.0, 1.0, size=(4, *shape))
    return RBMatrix(E)


def _delta(M: RBMatrix, eps: float, seed: int, name: str) -> RBMatrix:
    if eps == 0.0:
        return RBMatrix.zeros(*M.shape)
    E = _random_direction(M.shape, seed, name)
    return RBMatrix(E.planes * (eps * frobenius_norm(M) / frobenius_norm(E)))


def perturb(prob: RBLSEProblem, spec: PerturbationSpec, modes=MODES,
            rank_tol: float | None = None) -> RBLSEProblem:
    """Add ``dM = eps ||M||_F E / ||E||_F`` to each of A, B, C, D.

    ``E`` is uniform on ``[-1, 1)`` in every component, drawn from its own
    stream.  The perturbed constraint stack of every mode in ``modes`` that
    the dimensions allow is re-checked for full row rank.
    """
    if spec.eps == 0.0:
        return RBLSEProblem(prob.A, prob.B, prob.C, prob.D, dict(prob.meta))
    parts = [M + _delta(M, spec.eps, spec.seed, "d" + name)
             for name, M in zip("ABCD", (prob.A, prob.B, prob.C, prob.D))]
    meta = dict(prob.meta, perturbation={"eps": spec.eps, "seed": spec.seed})
    out = RBLSEProblem(*parts, meta=meta)
    m, n, p, d = out.dims
    for mode in modes:
        if (4 * p if mode == "real" else 2 * p) > n:
            continue
        if not rank_check(stacked_instance(out, mode).C, rank_tol):
            raise RankLostUnderPerturbation(f"{mode} constraint stack lost full row rank")
    return out


def measure_eps(orig: RBLSEProblem, pert: RBLSEProblem) -> float:
    """Smallest ``eps`` with ``||dM||_F <= eps ||M||_F`` for M in A, B, C, D."""
    worst = 0.0
    for M, Mh in zip((orig.A, orig.B, orig.C, orig.D), (pert.A, pert.B, pert.C, pert.D)):
        if M.shape != Mh.shape:
            raise DimensionMismatch(f"shape mismatch: {M.shape} vs {Mh.shape}")
        dnorm = frobenius_norm(Mh - M)
        norm = frobenius_norm(M)
        if norm == 0.0:
            ratio = math.inf if dnorm > 0.0 else 0.0
        else:
            ratio = dnorm / norm
        worst = max(worst, ratio)
    return worst


def _norm2(M: np.ndarray) -> float:
    if M.size == 0:
        return 0.0
    return float(np.linalg.svd(M, compute_uv=False)[0])


def bound(prob: RBLSEProblem, X, eps: float, mode: str) -> PerturbationReport:
    inst = stacked_instance(prob, mode)
    Ac, Bc, Cc, Dc = inst.A, inst.B, inst.C, inst.D
    X = np.asarray(X)
    n = Ac.shape[1]
    I = np.eye(n)
    Cc_pinv = pinv(Cc)
    P = I - Cc_pinv @ Cc
    AP = Ac @ P
    AP_pinv = pinv(AP)
    L = (I - AP_pinv @ Ac) @ Cc_pinv
    R = Bc - Ac @ X

    nA, nB, nC, nD = (float(np.linalg.norm(M)) for M in (Ac, Bc, Cc, Dc))
    nX = float(np.linalg.norm(X))
    nR = float(np.linalg.norm(R))
    K_B = nA * _norm2(AP_pinv)
    L2 = _norm2(L)
    K_A = nC * L2
    AL2 = _norm2(Ac @ L)

    ratios = {
        "D_over_CX": nD / (nC * nX) if nX else math.inf,
        "B_over_AX": nB / (nA * nX) if nX else math.inf,
        "R_over_AX": nR / (nA * nX) if nX else math.inf,
        "C_over_A": nC / nA,
    }
    U = eps * (
        K_A * (ratios["D_over_CX"] + 1.0)
        + K_B * (ratios["B_over_AX"] + 1.0)
        + K_B**2 * (ratios["C_over_A"] * AL2 + 1.0) * ratios["R_over_AX"]
    ) if eps else 0.0
    s = np.linalg.svd(AP, compute_uv=False) if AP.size else np.zeros(0)
    num_rank = int(np.sum(s > max(AP.shape) * np.finfo(float).eps * s[0])) if s.size else 0
    return PerturbationReport(
        mode=mode, eps=eps, bound=float(U), K_A=K_A, K_B=K_B, L_norm2=L2, AL_norm2=AL2,
        P=P, R=R, ratios=ratios, expected_rank=n - Cc.shape[0], numerical_rank=num_rank,
    )


def bound_real(prob: RBLSEProblem, X_RL, eps: float) -> PerturbationReport:
    return bound(prob, X_RL, eps, "real")


def bound_complex(prob: RBLSEProblem, X_CL, eps: float) -> PerturbationReport:
    return bound(prob, X_CL, eps, "complex")


def forward_error(X, X_hat) -> tuple[float, bool]:
    """``||X_hat - X||_F / ||X||_F``; falls back to the absolute error when ``X == 0``."""
    diff = float(np.linalg.norm(np.asarray(X_hat) - np.asarray(X)))
    nX = float(np.linalg.norm(X))
    if nX == 0.0:
        return diff, False
    return diff / nX, True


def perturbation_trial(prob: RBLSEProblem, spec: PerturbationSpec, mode: str,
                       X=None) -> PerturbationReport:
    """Solve, perturb, re-solve and bound; the report carries the forward error.

    The bound is evaluated at the measured perturbation level, not the target.
    """
    if X is None:
        X = solve(prob, mode).X
    pert = perturb(prob, spec, modes=(mode,))
    X_hat = solve(pert, mode).X
    eps = measure_eps(prob, pert)
    rep = bound(prob, X, eps, mode)
    rep.forward_error, rep.relative = forward_error(X, X_hat)
    return rep

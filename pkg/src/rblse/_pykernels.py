"""Pure-Python (numpy) implementations of the factorization kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors them loop for
loop.  Both must produce factors that agree to rounding.
"""

from __future__ import annotations

import numpy as np


def _working_copy(M) -> np.ndarray:
    M = np.asarray(M)
    dtype = np.complex128 if np.iscomplexobj(M) else np.float64
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {M.shape}")
    return np.array(M, dtype=dtype, order="F", copy=True)


def householder_qr(M):
    """Full Householder QR ``M = Q R`` with ``Q`` square and real nonnegative ``diag(R)``."""
    A = _working_copy(M)
    k, l = A.shape
    r = min(k, l)
    vs: list = [None] * r
    betas = np.zeros(r)

    for j in range(r):
        x = A[j:, j]
        tail = float(np.vdot(x[1:], x[1:]).real)
        if tail == 0.0:
            continue
        ax0 = abs(x[0])
        normx = np.sqrt(ax0 * ax0 + tail)
        phase = x[0] / ax0 if ax0 != 0.0 else 1.0
        v = x.copy()
        v[0] = x[0] + phase * normx
        beta = 2.0 / (abs(v[0]) ** 2 + tail)
        A[j:, j + 1:] -= beta * np.outer(v, v.conj() @ A[j:, j + 1:])
        A[j, j] = -phase * normx
        A[j + 1:, j] = 0.0
        vs[j] = v
        betas[j] = beta

    Q = np.eye(k, dtype=A.dtype, order="F")
    for j in range(r - 1, -1, -1):
        v = vs[j]
        if v is None:
            continue
        Q[j:, :] -= betas[j] * np.outer(v, v.conj() @ Q[j:, :])

    for j in range(r):
        dj = A[j, j]
        if dj.real < 0.0 or dj.imag != 0.0:
            ph = dj / abs(dj)
            A[j, j:] *= np.conj(ph)
            A[j, j] = abs(dj)
            Q[:, j] *= ph
    return Q, A


def forward_substitution(L, B):
    """Solve ``L Y = B`` for lower triangular ``L`` (entries above the diagonal ignored)."""
    L = np.asarray(L)
    B = np.asarray(B)
    dtype = np.result_type(L.dtype, B.dtype, np.float64)
    p = L.shape[0]
    if L.shape != (p, p) or B.shape[0] != p:
        raise ValueError(f"incompatible shapes {L.shape} and {B.shape}")
    Y = np.array(B, dtype=dtype, copy=True)
    for i in range(p):
        if i:
            Y[i] -= L[i, :i] @ Y[:i]
        Y[i] /= L[i, i]
    return Y

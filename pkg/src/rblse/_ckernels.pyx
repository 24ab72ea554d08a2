# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Householder QR and forward substitution (real and complex double)."""

import numpy as np

from libc.math cimport sqrt

ctypedef fused scalar_t:
    double
    double complex


cdef inline double _abs2(scalar_t x) noexcept nogil:
    if scalar_t is double:
        return x * x
    else:
        return x.real * x.real + x.imag * x.imag


cdef inline scalar_t _conj(scalar_t x) noexcept nogil:
    if scalar_t is double:
        return x
    else:
        return x.conjugate()


cdef void _reflect(scalar_t[::1, :] X, scalar_t[::1, :] V, double beta,
                   Py_ssize_t j, Py_ssize_t c0) noexcept nogil:
    # X[j:, c] -= beta * v * (v^H X[j:, c]) for every column c >= c0
    cdef Py_ssize_t i, c, k = X.shape[0], l = X.shape[1]
    cdef scalar_t s
    for c in range(c0, l):
        s = 0
        for i in range(j, k):
            s = s + _conj(V[i, j]) * X[i, c]
        s = s * beta
        for i in range(j, k):
            X[i, c] = X[i, c] - V[i, j] * s


cdef void _hqr(scalar_t[::1, :] A, scalar_t[::1, :] Q, scalar_t[::1, :] V,
               double[::1] betas) noexcept nogil:
    cdef Py_ssize_t k = A.shape[0], l = A.shape[1]
    cdef Py_ssize_t r = k if k < l else l
    cdef Py_ssize_t i, j, c
    cdef double tail, ax0, normx, beta
    cdef scalar_t x0, phase, dj

    for j in range(r):
        tail = 0.0
        for i in range(j + 1, k):
            tail = tail + _abs2(A[i, j])
        betas[j] = 0.0
        if tail == 0.0:
            continue
        x0 = A[j, j]
        ax0 = sqrt(_abs2(x0))
        normx = sqrt(ax0 * ax0 + tail)
        if ax0 != 0.0:
            phase = x0 / ax0
        else:
            phase = 1.0
        V[j, j] = x0 + phase * normx
        for i in range(j + 1, k):
            V[i, j] = A[i, j]
        beta = 2.0 / (_abs2(V[j, j]) + tail)
        betas[j] = beta
        _reflect(A, V, beta, j, j + 1)
        A[j, j] = -phase * normx
        for i in range(j + 1, k):
            A[i, j] = 0

    for i in range(k):
        for c in range(k):
            Q[i, c] = 0
        Q[i, i] = 1
    for j in range(r - 1, -1, -1):
        if betas[j] != 0.0:
            _reflect(Q, V, betas[j], j, 0)

    for j in range(r):
        dj = A[j, j]
        if scalar_t is double:
            if dj < 0.0:
                for c in range(j, l):
                    A[j, c] = -A[j, c]
                for i in range(k):
                    Q[i, j] = -Q[i, j]
        else:
            if dj.real < 0.0 or dj.imag != 0.0:
                ax0 = sqrt(_abs2(dj))
                phase = dj / ax0
                for c in range(j + 1, l):
                    A[j, c] = A[j, c] * phase.conjugate()
                A[j, j] = ax0
                for i in range(k):
                    Q[i, j] = Q[i, j] * phase


def householder_qr(M):
    """Full Householder QR ``M = Q R`` with ``Q`` square and real nonnegative ``diag(R)``."""
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {M.shape}")
    dtype = np.complex128 if np.iscomplexobj(M) else np.float64
    A = np.array(M, dtype=dtype, order="F", copy=True)
    k, l = A.shape
    r = min(k, l)
    Q = np.empty((k, k), dtype=dtype, order="F")
    V = np.zeros((k, max(r, 1)), dtype=dtype, order="F")
    betas = np.zeros(max(r, 1))
    cdef double[::1, :] Ad, Qd, Vd
    cdef double complex[::1, :] Az, Qz, Vz
    cdef double[::1] bv = betas
    if dtype == np.float64:
        Ad, Qd, Vd = A, Q, V
        with nogil:
            _hqr(Ad, Qd, Vd, bv)
    else:
        Az, Qz, Vz = A, Q, V
        with nogil:
            _hqr(Az, Qz, Vz, bv)
    return Q, A


cdef void _fsub(scalar_t[::1, :] L, scalar_t[::1, :] Y) noexcept nogil:
    cdef Py_ssize_t p = L.shape[0], d = Y.shape[1]
    cdef Py_ssize_t i, q, c
    cdef scalar_t s
    for c in range(d):
        for i in range(p):
            s = Y[i, c]
            for q in range(i):
                s = s - L[i, q] * Y[q, c]
            Y[i, c] = s / L[i, i]


def forward_substitution(L, B):
    """Solve ``L Y = B`` for lower triangular ``L`` (entries above the diagonal ignored)."""
    L = np.asarray(L)
    B = np.asarray(B)
    p = L.shape[0]
    if L.ndim != 2 or L.shape != (p, p) or B.shape[0] != p:
        raise ValueError(f"incompatible shapes {L.shape} and {B.shape}")
    vector = B.ndim == 1
    dtype = np.complex128 if (np.iscomplexobj(L) or np.iscomplexobj(B)) else np.float64
    Lw = np.array(L, dtype=dtype, order="F")
    Y = np.array(B.reshape(p, -1), dtype=dtype, order="F", copy=True)
    cdef double[::1, :] Ld, Yd
    cdef double complex[::1, :] Lz, Yz
    if dtype == np.float64:
        Ld, Yd = Lw, Y
        with nogil:
            _fsub(Ld, Yd)
    else:
        Lz, Yz = Lw, Y
        with nogil:
            _fsub(Lz, Yz)
    return Y[:, 0] if vector else Y

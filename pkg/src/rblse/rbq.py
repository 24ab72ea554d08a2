"""Reduced biquaternion scalars and matrices.

A reduced biquaternion is ``p0 + p1 i + p2 j + p3 k`` with the commutative
multiplication table ``ij = ji = k``, ``jk = kj = i``, ``ki = ik = -j``,
``i^2 = k^2 = -1`` and ``j^2 = 1``.  Writing ``r1 = p0 + p1 i`` and
``r2 = p2 + p3 i`` gives ``zeta = r1 + r2 j`` and the product rule

    (r1 + r2 j)(s1 + s2 j) = (r1 s1 + r2 s2) + (r1 s2 + r2 s1) j

which is what the matrix product below evaluates plane-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "RBScalar",
    "RBMatrix",
    "rb_mul",
    "rb_norm",
    "mat_mul",
    "mat_add",
    "scale",
    "frobenius_norm",
    "E1",
    "E2",
]

PLANE_KEYS = ("r", "i", "j", "k")


@dataclass(frozen=True)
class RBScalar:
    p0: float = 0.0
    p1: float = 0.0
    p2: float = 0.0
    p3: float = 0.0

    @property
    def r1(self) -> complex:
        return complex(self.p0, self.p1)

    @property
    def r2(self) -> complex:
        return complex(self.p2, self.p3)

    @classmethod
    def from_complex_pair(cls, r1: complex, r2: complex) -> RBScalar:
        return cls(r1.real, r1.imag, r2.real, r2.imag)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p0, self.p1, self.p2, self.p3)

    def __mul__(self, other: RBScalar) -> RBScalar:
        return rb_mul(self, other)

    def __add__(self, other: RBScalar) -> RBScalar:
        return RBScalar(self.p0 + other.p0, self.p1 + other.p1,
                        self.p2 + other.p2, self.p3 + other.p3)

    def __abs__(self) -> float:
        return rb_norm(self)


# Idempotent zero divisors: E1 * E2 == 0, E1 * E1 == E1.
E1 = RBScalar(0.5, 0.0, 0.5, 0.0)
E2 = RBScalar(0.5, 0.0, -0.5, 0.0)


def _mul_parts(a0, a1, a2, a3, b0, b1, b2, b3):
    # Each bracket is symmetric under a <-> b so the result is bitwise commutative.
    c0 = (a0 * b0 - a1 * b1) + (a2 * b2 - a3 * b3)
    c1 = (a0 * b1 + a1 * b0) + (a2 * b3 + a3 * b2)
    c2 = (a0 * b2 + a2 * b0) - (a1 * b3 + a3 * b1)
    c3 = (a0 * b3 + a3 * b0) + (a1 * b2 + a2 * b1)
    return c0, c1, c2, c3


def rb_mul(a: RBScalar, b: RBScalar) -> RBScalar:
    """Product of two reduced biquaternions (commutative)."""
    return RBScalar(*_mul_parts(*a.as_tuple(), *b.as_tuple()))


def rb_norm(a: RBScalar) -> float:
    return math.sqrt(a.p0 * a.p0 + a.p1 * a.p1 + a.p2 * a.p2 + a.p3 * a.p3)


class RBMatrix:
    """An m x n reduced biquaternion matrix ``M0 + M1 i + M2 j + M3 k``.

    The four real component planes are stored as one read-only
    ``(4, m, n)`` float64 array.  Complex views ``N1 = M0 + M1 i`` and
    ``N2 = M2 + M3 i`` are computed on access.
    """

    __slots__ = ("_planes",)

    def __init__(self, planes: Any):
        arr = np.array(planes, dtype=np.float64, copy=True)
        if arr.ndim != 3 or arr.shape[0] != 4:
            raise DimensionMismatch(f"planes must have shape (4, m, n), got {arr.shape}")
        arr.setflags(write=False)
        self._planes = arr

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_planes(cls, M0, M1, M2, M3) -> RBMatrix:
        shapes = {np.shape(M) for M in (M0, M1, M2, M3)}
        if len(shapes) != 1:
            raise DimensionMismatch(f"component planes disagree in shape: {sorted(shapes)}")
        return cls(np.stack([M0, M1, M2, M3]))

    @classmethod
    def from_complex(cls, N1, N2=None) -> RBMatrix:
        N1 = np.asarray(N1, dtype=np.complex128)
        N2 = np.zeros_like(N1) if N2 is None else np.asarray(N2, dtype=np.complex128)
        if N1.shape != N2.shape:
            raise DimensionMismatch(f"N1 {N1.shape} and N2 {N2.shape} differ")
        return cls(np.stack([N1.real, N1.imag, N2.real, N2.imag]))

    @classmethod
    def from_real(cls, X) -> RBMatrix:
        """Embed a real (or complex, via ``i``) matrix as an RB matrix."""
        X = np.asarray(X)
        if np.iscomplexobj(X):
            return cls.from_complex(X)
        X = np.asarray(X, dtype=np.float64)
        z = np.zeros_like(X)
        return cls(np.stack([X, z, z, z]))

    @classmethod
    def zeros(cls, m: int, n: int) -> RBMatrix:
        return cls(np.zeros((4, m, n)))

    @classmethod
    def identity(cls, n: int) -> RBMatrix:
        return cls.from_real(np.eye(n))

    @classmethod
    def from_entries(cls, entries) -> RBMatrix:
        """Build from a nested list of :class:`RBScalar`."""
        rows = [[e.as_tuple() for e in row] for row in entries]
        arr = np.array(rows, dtype=np.float64)  # (m, n, 4)
        return cls(np.moveaxis(arr, -1, 0))

    # -- views ------------------------------------------------------------
    @property
    def planes(self) -> np.ndarray:
        return self._planes

    @property
    def shape(self) -> tuple[int, int]:
        return self._planes.shape[1], self._planes.shape[2]

    @property
    def m(self) -> int:
        return self._planes.shape[1]

    @property
    def n(self) -> int:
        return self._planes.shape[2]

    @property
    def N1(self) -> np.ndarray:
        return self._planes[0] + 1j * self._planes[1]

    @property
    def N2(self) -> np.ndarray:
        return self._planes[2] + 1j * self._planes[3]

    def entry(self, r: int, c: int) -> RBScalar:
        return RBScalar(*(float(v) for v in self._planes[:, r, c]))

    def is_real(self) -> bool:
        return not self._planes[1:].any()

    def is_complex(self) -> bool:
        return not self._planes[2:].any()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: RBMatrix) -> RBMatrix:
        return mat_add(self, other)

    def __sub__(self, other: RBMatrix) -> RBMatrix:
        _check_same_shape(self, other)
        return RBMatrix(self._planes - other._planes)

    def __neg__(self) -> RBMatrix:
        return RBMatrix(-self._planes)

    def __matmul__(self, other: RBMatrix) -> RBMatrix:
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RBMatrix):
            return NotImplemented
        return np.array_equal(self._planes, other._planes)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RBMatrix(m={self.m}, n={self.n})"

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "planes": {key: self._planes[q].tolist() for q, key in enumerate(PLANE_KEYS)},
        }

    @classmethod
    def from_dict(cls, obj: dict) -> RBMatrix:
        try:
            m, n = int(obj["m"]), int(obj["n"])
            planes = [np.array(obj["planes"][key], dtype=np.float64) for key in PLANE_KEYS]
        except (KeyError, TypeError, ValueError) as exc:
            raise DimensionMismatch(f"malformed RB matrix object: {exc}") from exc
        for q, key in enumerate(PLANE_KEYS):
            P = planes[q]
            if P.size == 0 and m * n == 0:
                planes[q] = P = P.reshape(m, n)
            if P.shape != (m, n):
                raise DimensionMismatch(f"plane {key!r} has shape {P.shape}, expected {(m, n)}")
        return cls(np.stack(planes))


def _check_same_shape(A: RBMatrix, B: RBMatrix) -> None:
    if A.shape != B.shape:
        raise DimensionMismatch(f"shape mismatch: {A.shape} vs {B.shape}")


def mat_add(A: RBMatrix, B: RBMatrix) -> RBMatrix:
    _check_same_shape(A, B)
    return RBMatrix(A.planes + B.planes)


def mat_mul(A: RBMatrix, B: RBMatrix) -> RBMatrix:
    if A.n != B.m:
        raise DimensionMismatch(f"inner dimensions differ: {A.shape} @ {B.shape}")
    a1, a2, b1, b2 = A.N1, A.N2, B.N1, B.N2
    return RBMatrix.from_complex(a1 @ b1 + a2 @ b2, a1 @ b2 + a2 @ b1)


def scale(alpha: RBScalar, A: RBMatrix) -> RBMatrix:
    """Entry-wise product ``alpha * A``."""
    return RBMatrix(np.stack(_mul_parts(*alpha.as_tuple(), *A.planes)))


def frobenius_norm(A: RBMatrix) -> float:
    return float(np.sqrt(np.sum(A.planes * A.planes)))

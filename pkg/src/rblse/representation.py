"""Real and complex representations of reduced biquaternion matrices.

For ``M = M0 + M1 i + M2 j + M3 k = N1 + N2 j``::

    M^R = [[M0, -M1, M2, -M3],        M^C = [[N1, N2],
           [M1,  M0, M3,  M2],               [N2, N1]]
           [M2, -M3, M0, -M1],
           [M3,  M2, M1,  M0]]

Both maps are algebra homomorphisms.  The first block columns
``M^R_c = [M0; M1; M2; M3]`` and ``M^C_c = [N1; N2]`` carry all of ``M`` and
have the same Frobenius norm as ``M``.  The remaining block columns are
signed block permutations of the first one (``Q_m``, ``R_m``, ``S_m`` for the
real form, ``P_m`` for the complex form).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, StructureViolation
from .rbq import RBMatrix

__all__ = [
    "BlockOperator",
    "Qm",
    "Rm",
    "Sm",
    "Pm",
    "apply_block_operator",
    "real_rep",
    "complex_rep",
    "real_rep_col",
    "complex_rep_col",
    "expand_real_col",
    "expand_complex_col",
    "from_real_rep",
    "from_complex_rep",
    "from_real_rep_col",
    "from_complex_rep_col",
]

# Destination block b receives sign * (source block) for (source, sign) = _PATTERNS[kind][b].
_PATTERNS = {
    "Qm": ((1, -1), (0, 1), (3, -1), (2, 1)),
    "Rm": ((2, 1), (3, 1), (0, 1), (1, 1)),
    "Sm": ((3, -1), (2, 1), (1, -1), (0, 1)),
    "Pm": ((1, 1), (0, 1)),
}


@dataclass(frozen=True)
class BlockOperator:
    """Signed block permutation ``Q_m``, ``R_m``, ``S_m`` (4m x 4m) or ``P_m`` (2m x 2m)."""

    kind: str
    m: int

    def __post_init__(self):
        if self.kind not in _PATTERNS:
            raise ValueError(f"unknown block operator {self.kind!r}")
        if self.m < 0:
            raise ValueError("block size must be nonnegative")

    @property
    def blocks(self) -> int:
        return len(_PATTERNS[self.kind])

    @property
    def size(self) -> int:
        return self.blocks * self.m

    def dense(self) -> np.ndarray:
        """Materialize the operator (only meant for checks)."""
        m = self.m
        O = np.zeros((self.size, self.size))
        I = np.eye(m)
        for dst, (src, sign) in enumerate(_PATTERNS[self.kind]):
            O[dst * m:(dst + 1) * m, src * m:(src + 1) * m] = sign * I
        return O

    def apply(self, X, transpose: bool = False) -> np.ndarray:
        return apply_block_operator(self, X, transpose=transpose)


def Qm(m: int) -> BlockOperator:
    return BlockOperator("Qm", m)


def Rm(m: int) -> BlockOperator:
    return BlockOperator("Rm", m)


def Sm(m: int) -> BlockOperator:
    return BlockOperator("Sm", m)


def Pm(m: int) -> BlockOperator:
    return BlockOperator("Pm", m)


def apply_block_operator(op: BlockOperator, X, transpose: bool = False) -> np.ndarray:
    """Return ``op @ X`` (or ``op.T @ X``) by moving row blocks, no multiply."""
    X = np.asarray(X)
    if X.ndim not in (1, 2) or X.shape[0] != op.size:
        raise DimensionMismatch(f"{op.kind} has size {op.size}, operand has {X.shape[0]} rows")
    m = op.m
    out = np.empty_like(X)
    for dst, (src, sign) in enumerate(_PATTERNS[op.kind]):
        if transpose:
            dst, src = src, dst
        block = X[src * m:(src + 1) * m]
        out[dst * m:(dst + 1) * m] = block if sign > 0 else -block
    return out


def real_rep_col(M: RBMatrix) -> np.ndarray:
    return M.planes.reshape(4 * M.m, M.n).copy()


def complex_rep_col(M: RBMatrix) -> np.ndarray:
    return np.vstack([M.N1, M.N2])


def expand_real_col(Mc) -> np.ndarray:
    """``[Mc, Q_m Mc, R_m Mc, S_m Mc]`` for a ``4m x n`` first block column."""
    Mc = np.asarray(Mc, dtype=np.float64)
    if Mc.ndim != 2 or Mc.shape[0] % 4:
        raise DimensionMismatch(f"row count {Mc.shape[0]} is not divisible by 4")
    m = Mc.shape[0] // 4
    return np.hstack([Mc] + [apply_block_operator(op(m), Mc) for op in (Qm, Rm, Sm)])


def expand_complex_col(Mc) -> np.ndarray:
    """``[Mc, P_m Mc]`` for a ``2m x n`` first block column."""
    Mc = np.asarray(Mc, dtype=np.complex128)
    if Mc.ndim != 2 or Mc.shape[0] % 2:
        raise DimensionMismatch(f"row count {Mc.shape[0]} is not divisible by 2")
    return np.hstack([Mc, apply_block_operator(Pm(Mc.shape[0] // 2), Mc)])


def real_rep(M: RBMatrix) -> np.ndarray:
    return expand_real_col(real_rep_col(M))


def complex_rep(M: RBMatrix) -> np.ndarray:
    return expand_complex_col(complex_rep_col(M))


def from_real_rep_col(Mc) -> RBMatrix:
    Mc = np.asarray(Mc, dtype=np.float64)
    if Mc.ndim != 2 or Mc.shape[0] % 4:
        raise DimensionMismatch(f"row count {Mc.shape[0]} is not divisible by 4")
    return RBMatrix(Mc.reshape(4, Mc.shape[0] // 4, Mc.shape[1]))


def from_complex_rep_col(Mc) -> RBMatrix:
    Mc = np.asarray(Mc, dtype=np.complex128)
    if Mc.ndim != 2 or Mc.shape[0] % 2:
        raise DimensionMismatch(f"row count {Mc.shape[0]} is not divisible by 2")
    m = Mc.shape[0] // 2
    return RBMatrix.from_complex(Mc[:m], Mc[m:])


def _check_structure(rep: np.ndarray, expected: np.ndarray, tol: float, what: str) -> None:
    dev = float(np.max(np.abs(rep - expected), initial=0.0))
    limit = tol * float(np.linalg.norm(rep))
    if dev > limit:
        raise StructureViolation(
            f"{what} deviates from the representation pattern by {dev:.3e} (allowed {limit:.3e})"
        )


def from_real_rep(rep, tol: float = 0.0) -> RBMatrix:
    """Recover ``M`` from ``M^R``.

    Only the first block column is read; the other three are checked against
    it and a :class:`StructureViolation` is raised if any entry deviates by
    more than ``tol * ||rep||_F``.  Use ``tol=0`` for exact constructions and
    something like ``1e-12`` for data that went through external I/O.
    """
    rep = np.asarray(rep, dtype=np.float64)
    if rep.ndim != 2 or rep.shape[0] % 4 or rep.shape[1] % 4:
        raise DimensionMismatch(f"real representation shape {rep.shape} is not 4m x 4n")
    n = rep.shape[1] // 4
    Mc = rep[:, :n]
    _check_structure(rep, expand_real_col(Mc), tol, "real representation")
    return from_real_rep_col(Mc)


def from_complex_rep(rep, tol: float = 0.0) -> RBMatrix:
    """Recover ``M`` from ``M^C``; same validation rules as :func:`from_real_rep`."""
    rep = np.asarray(rep, dtype=np.complex128)
    if rep.ndim != 2 or rep.shape[0] % 2 or rep.shape[1] % 2:
        raise DimensionMismatch(f"complex representation shape {rep.shape} is not 2m x 2n")
    n = rep.shape[1] // 2
    Mc = rep[:, :n]
    _check_structure(rep, expand_complex_col(Mc), tol, "complex representation")
    return from_complex_rep_col(Mc)

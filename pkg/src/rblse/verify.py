"""Self-check suite behind ``rblse verify``.

Each check draws ``cases`` seeded random inputs and returns the worst
observed deviation next to its tolerance.  This is a runtime smoke test for
installed builds; the pytest suite is the full verification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lse import LSEInstance, lse_oracle, solve_lse
from .rbq import RBMatrix, RBScalar, frobenius_norm, mat_mul, rb_mul
from .representation import (
    Pm,
    Qm,
    Rm,
    Sm,
    complex_rep,
    complex_rep_col,
    from_complex_rep,
    from_real_rep,
    real_rep,
    real_rep_col,
)
from .solvers import flop_estimate


@dataclass
class CheckResult:
    name: str
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.worst <= self.tol)


def _rb(rng, m, n) -> RBMatrix:
    return RBMatrix(rng.standard_normal((4, m, n)))


def _rel(a, b) -> float:
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))


def check_scalar_algebra(rng, cases):
    worst = 0.0
    for _ in range(cases):
        a, b, c = (RBScalar(*rng.standard_normal(4)) for _ in range(3))
        ab, ba = rb_mul(a, b).as_tuple(), rb_mul(b, a).as_tuple()
        worst = max(worst, float(np.max(np.abs(np.subtract(ab, ba)))))
        lhs = np.array(rb_mul(rb_mul(a, b), c).as_tuple())
        rhs = np.array(rb_mul(a, rb_mul(b, c)).as_tuple())
        scale = abs(a) * abs(b) * abs(c)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)) / scale)
    return CheckResult("scalar commutativity/associativity", worst, 1e-14)


def check_homomorphism(rng, cases):
    worst = 0.0
    for _ in range(cases):
        m, n, t = rng.integers(1, 6, size=3)
        P, Q, Rr = _rb(rng, m, n), _rb(rng, m, n), _rb(rng, n, t)
        for rep in (real_rep, complex_rep):
            worst = max(worst, _rel(rep(P + Q), rep(P) + rep(Q)))
            worst = max(worst, _rel(rep(mat_mul(P, Rr)), rep(P) @ rep(Rr)))
        alpha = float(rng.standard_normal())
        worst = max(worst, _rel(real_rep(RBMatrix(alpha * P.planes)), alpha * real_rep(P)))
        beta = complex(*rng.standard_normal(2))
        bP = mat_mul(RBMatrix.from_complex(beta * np.eye(m)), P)
        worst = max(worst, _rel(complex_rep(bP), beta * complex_rep(P)))
    return CheckResult("representation homomorphism", worst, 1e-12)


def check_norms(rng, cases):
    worst = 0.0
    for _ in range(cases):
        m, n = rng.integers(1, 8, size=2)
        M = _rb(rng, m, n)
        f = frobenius_norm(M)
        for val in (0.5 * np.linalg.norm(real_rep(M)), np.linalg.norm(complex_rep(M)) / np.sqrt(2),
                    np.linalg.norm(real_rep_col(M)), np.linalg.norm(complex_rep_col(M))):
            worst = max(worst, abs(f - val) / f)
    return CheckResult("Frobenius norm identities", worst, 1e-12)


def check_block_operators(rng, cases):
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 6))
        for op in (Qm(m), Rm(m), Sm(m)):
            O = op.dense()
            worst = max(worst, float(np.linalg.norm(O.T @ O - np.eye(4 * m))))
            X = rng.standard_normal((4 * m, 3))
            worst = max(worst, _rel(op.apply(X), O @ X))
        P = Pm(m)
        X = rng.standard_normal((2 * m, 3))
        worst = max(worst, _rel(P.apply(P.apply(X)), X))
    return CheckResult("block operator orthogonality/involution", worst, 0.0)


def check_round_trip(rng, cases):
    bad = 0.0
    for _ in range(cases):
        M = _rb(rng, *rng.integers(1, 6, size=2))
        bad += float(from_real_rep(real_rep(M)) != M) + float(from_complex_rep(complex_rep(M)) != M)
    return CheckResult("exact representation round trip", bad, 0.0)


def check_transfer(rng, cases):
    worst = 0.0
    for _ in range(cases):
        m, n, d = rng.integers(1, 8, size=3)
        A, B = _rb(rng, m, n), _rb(rng, m, d)
        for Xf in (rng.standard_normal((n, d)),
                   rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))):
            rb = frobenius_norm(mat_mul(A, RBMatrix.from_real(Xf)) - B)
            rep = real_rep_col if not np.iscomplexobj(Xf) else complex_rep_col
            stacked = np.linalg.norm(rep(A) @ Xf - rep(B))
            worst = max(worst, abs(rb - stacked) / frobenius_norm(B))
    return CheckResult("residual transfer identity", worst, 1e-12)


def check_oracle(rng, cases):
    worst = 0.0
    for q in range(cases):
        n = int(rng.integers(2, 17))
        p = int(rng.integers(1, min(6, n) + 1))
        m = int(rng.integers(n, 41))
        d = int(rng.integers(1, 4))
        shapes = ((m, n), (m, d), (p, n), (p, d))
        mats = [rng.standard_normal(s) for s in shapes]
        if q % 2:
            mats = [M + 1j * rng.standard_normal(M.shape) for M in mats]
        inst = LSEInstance(*mats)
        X = solve_lse(inst).X
        worst = max(worst, _rel(X, lse_oracle(inst)))
    return CheckResult("QR solver vs nullspace oracle", worst, 1e-9)


def check_flops(rng, cases):
    bad = sum(flop_estimate("real", 30 * t, 10 * t, 2 * t, 2)
              >= flop_estimate("complex", 30 * t, 10 * t, 2 * t, 2) for t in range(1, 10))
    return CheckResult("flop model real < complex", float(bad), 0.0)


CHECKS = (check_scalar_algebra, check_homomorphism, check_norms, check_block_operators,
          check_round_trip, check_transfer, check_oracle, check_flops)


def run_all(cases: int = 200, seed: int = 0) -> list[CheckResult]:
    results = []
    for q, check in enumerate(CHECKS):
        rng = np.random.default_rng([seed, q])
        results.append(check(rng, cases))
    return results

"""Acceptance criteria, each checked at its stated tolerance.

Every test records one PASS/FAIL line; they are printed together in the
"acceptance criteria" section at the end of the pytest run.
"""

import time
import warnings

import numpy as np
import pytest

from rblse.harness import ExperimentConfig, run_accuracy, run_benchmark, run_perturbation, run_recovery
from rblse.lse import LSEInstance, lse_oracle, solve_lse
from rblse.rbq import RBMatrix, frobenius_norm, mat_mul
from rblse.representation import (
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
from rblse.solvers import RBLSEProblem, flop_estimate, solve_complex, solve_real, stacked_instance

from conftest import random_rb

TS = (1, 3, 5, 7, 9)


def _rel(X, ref):
    return float(np.linalg.norm(X - ref) / np.linalg.norm(ref))


def test_criterion_1_accuracy(record_acceptance):
    start = time.perf_counter()
    rows = run_accuracy(ExperimentConfig(ts=TS, trials=5, seed=0))
    seconds = time.perf_counter() - start
    values = [v for r in rows for k, v in r.metrics.items() if k.startswith("eps")]
    worst = max(values)
    ok = len(rows) == 2 * len(TS) and len(values) == 4 * len(TS) and worst < -12 and seconds < 120
    record_acceptance(1, "accuracy eps1..eps4 < -12", ok,
                      f"worst={worst:.2f} time={seconds:.1f}s")
    assert ok


def test_criterion_2_recovery(record_acceptance):
    start = time.perf_counter()
    rows = run_recovery(ExperimentConfig(ts=TS, trials=5, seed=0))
    seconds = time.perf_counter() - start
    values = [r.metrics["epsR" if r.mode == "real" else "epsC"] for r in rows]
    worst = max(values)
    ok = len(values) == 2 * len(TS) and worst < 1e-12 and seconds < 120
    record_acceptance(2, "recovery epsR, epsC < 1e-12", ok,
                      f"worst={worst:.2e} time={seconds:.1f}s")
    assert ok


@pytest.mark.slow
def test_criterion_3_perturbation_bounds(record_acceptance):
    rows = run_perturbation(ExperimentConfig(ts=(1, 5, 9), trials=50, seed=0,
                                             eps=(1e-13, 1e-10, 1e-7)))
    trials = sum(r.metrics["trials"] for r in rows)
    violations = sum(r.metrics["violations"] for r in rows)
    margin = min(r.metrics["min_bound_over_error"] for r in rows)
    ok = len(rows) == 18 and trials == 18 * 50 and violations == 0
    record_acceptance(3, "forward error <= bound in 100% of trials", ok,
                      f"trials={trials} violations={violations} min(bound/error)={margin:.2f}")
    assert ok


def test_criterion_4_oracle_equivalence(record_acceptance):
    rng = np.random.default_rng(4)
    worst = 0.0
    for cplx in (False, True):
        for _ in range(100):
            n = int(rng.integers(1, 17))
            p = int(rng.integers(1, min(6, n) + 1))
            m = int(rng.integers(1, 41))
            d = int(rng.integers(1, 4))
            mats = [rng.standard_normal(s) for s in ((m, n), (m, d), (p, n), (p, d))]
            if cplx:
                mats = [M + 1j * rng.standard_normal(M.shape) for M in mats]
            inst = LSEInstance(*mats)
            worst = max(worst, _rel(solve_lse(inst).X, lse_oracle(inst)))
    for _ in range(25):
        n = int(rng.integers(4, 9))
        p = 1 if n < 8 else int(rng.integers(1, 3))
        d = int(rng.integers(1, 4))
        m = int(rng.integers(n + d, n + d + 8))
        prob = RBLSEProblem(random_rb(rng, m, n), random_rb(rng, m, d),
                            random_rb(rng, p, n), random_rb(rng, p, d))
        for mode, solver in (("real", solve_real), ("complex", solve_complex)):
            worst = max(worst, _rel(solver(prob).X, lse_oracle(stacked_instance(prob, mode))))
    ok = worst <= 1e-9
    record_acceptance(4, "solver vs nullspace oracle <= 1e-9", ok, f"worst={worst:.2e}")
    assert ok


def test_criterion_5_representation_suite(record_acceptance):
    rng = np.random.default_rng(5)
    cases = 200
    worst = {"homomorphism": 0.0, "norms": 0.0, "operators": 0.0, "round trip": 0.0}
    for _ in range(cases):
        m, n, k = (int(v) for v in rng.integers(1, 6, size=3))
        P, Q, R = random_rb(rng, m, n), random_rb(rng, m, n), random_rb(rng, n, k)
        for rep in (real_rep, complex_rep):
            worst["homomorphism"] = max(
                worst["homomorphism"],
                np.abs(rep(P + Q) - rep(P) - rep(Q)).max(),
                np.abs(rep(mat_mul(P, R)) - rep(P) @ rep(R)).max(),
            )
        f = frobenius_norm(P)
        worst["norms"] = max(worst["norms"],
                             abs(f - 0.5 * np.linalg.norm(real_rep(P))) / f,
                             abs(f - np.linalg.norm(complex_rep(P)) / np.sqrt(2)) / f,
                             abs(f - np.linalg.norm(real_rep_col(P))) / f,
                             abs(f - np.linalg.norm(complex_rep_col(P))) / f)
        for op in (Qm(m), Rm(m), Sm(m), Pm(m)):
            O = op.dense()
            X = rng.standard_normal((op.size, 2))
            worst["operators"] = max(worst["operators"],
                                     np.abs(O.T @ O - np.eye(op.size)).max(),
                                     np.abs(op.apply(X) - O @ X).max(),
                                     np.abs(op.apply(op.apply(X), transpose=True) - X).max())
        Pm2 = Pm(m).dense()
        worst["operators"] = max(worst["operators"], np.abs(Pm2 @ Pm2 - np.eye(2 * m)).max())
        exact = from_real_rep(real_rep(P)) == P and from_complex_rep(complex_rep(P)) == P
        worst["round trip"] = max(worst["round trip"], 0.0 if exact else 1.0)
    tol = {"homomorphism": 1e-12, "norms": 1e-12, "operators": 0.0, "round trip": 0.0}
    ok = all(worst[k] <= tol[k] for k in worst)
    detail = " ".join(f"{k}={v:.1e}" for k, v in worst.items())
    record_acceptance(5, f"representation identities over {cases} cases", ok, detail)
    assert ok


def test_criterion_6_transfer_identities(record_acceptance):
    rng = np.random.default_rng(6)
    cases = 100
    worst = 0.0
    for _ in range(cases):
        m, n, d = (int(v) for v in rng.integers(1, 9, size=3))
        A, B = random_rb(rng, m, n), random_rb(rng, m, d)
        Xr = rng.standard_normal((n, d))
        Xc = Xr + 1j * rng.standard_normal((n, d))
        nB = frobenius_norm(B)
        for X, rep in ((Xr, real_rep_col), (Xc, complex_rep_col)):
            rb = frobenius_norm(mat_mul(A, RBMatrix.from_real(X)) - B)
            worst = max(worst, abs(rb - np.linalg.norm(rep(A) @ X - rep(B))) / nB)
    ok = worst <= 1e-12
    record_acceptance(6, f"residual transfer over {cases} cases", ok, f"worst={worst:.1e} x ||B||")
    assert ok


def test_criterion_7_cost_model(record_acceptance):
    flops_ok = all(flop_estimate("real", 30 * t, 10 * t, 2 * t, 2)
                   < flop_estimate("complex", 30 * t, 10 * t, 2 * t, 2) for t in range(1, 10))
    rows = run_benchmark(ExperimentConfig(ts=(3, 5, 7, 9), trials=50, seed=0))
    med = {(r.t, r.mode): r.metrics["median_seconds"] for r in rows}
    slower = [t for t in (3, 5, 7, 9) if med[(t, "real")] >= med[(t, "complex")]]
    timing = " ".join(f"t={t}:{med[(t, 'real')] * 1e3:.2f}/{med[(t, 'complex')] * 1e3:.2f}ms"
                      for t in (3, 5, 7, 9))
    soft = "timing ok" if not slower else f"timing FLAG real not faster at t={slower}"
    record_acceptance(7, "flop ordering (hard) and median t_r < t_c (soft)", flops_ok,
                      f"{soft} [{timing}]")
    if slower:
        warnings.warn(f"median real solve not faster than complex for t in {slower}")
    assert flops_ok

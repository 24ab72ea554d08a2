import numpy as np
import pytest

from rblse.errors import PreconditionViolated, RankDeficientConstraint
from rblse.harness import generate_consistent_problem, generate_random_problem
from rblse.lse import lse_oracle
from rblse.rbq import RBMatrix, frobenius_norm, mat_mul
from rblse.representation import complex_rep_col, real_rep_col
from rblse.solvers import (
    RBLSEProblem,
    flop_estimate,
    residual_metrics,
    solve_complex,
    solve_real,
    stacked_instance,
)

from conftest import random_rb


def _small_problem(rng, m=12, n=4, p=1, d=1):
    return RBLSEProblem(random_rb(rng, m, n), random_rb(rng, m, d),
                        random_rb(rng, p, n), random_rb(rng, p, d))


@pytest.mark.parametrize("mode, solver", [("real", solve_real), ("complex", solve_complex)])
def test_recovers_exact_solution(mode, solver):
    prob, X = generate_consistent_problem(1, seed=11, mode=mode)
    sol = solver(prob)
    assert np.linalg.norm(sol.X - X) < 1e-12
    assert sol.mode == mode
    assert np.iscomplexobj(sol.X) == (mode == "complex")


def test_random_problem_metrics():
    prob = generate_random_problem(1, seed=5)
    r, c = solve_real(prob), solve_complex(prob)
    assert max(r.metrics) < -13 and max(c.metrics) < -13
    assert r.metric_names == ("eps1", "eps2") and c.metric_names == ("eps3", "eps4")
    assert r.seconds > 0


@pytest.mark.parametrize("mode, solver", [("real", solve_real), ("complex", solve_complex)])
def test_matches_oracle_on_stacked_instance(rng, mode, solver):
    for n in (4, 6):
        prob = _small_problem(rng, n=n)
        X = solver(prob).X
        Xo = lse_oracle(stacked_instance(prob, mode))
        assert np.linalg.norm(X - Xo) <= 1e-9 * np.linalg.norm(Xo)


@pytest.mark.parametrize("mode, solver", [("real", solve_real), ("complex", solve_complex)])
def test_metrics_of_oracle_solution_are_comparable(mode, solver):
    # Both constraint residuals sit at rounding level, where single draws
    # scatter by about a decade; compare their mean log10 over seeds instead.
    gaps, ours, theirs = [], [], []
    for seed in range(20):
        prob = generate_random_problem(1, seed=seed)
        sol = solver(prob)
        oracle = residual_metrics(prob, lse_oracle(stacked_instance(prob, mode)), mode)
        gaps.append(abs(sol.metrics[0] - oracle[0]))
        ours.append(sol.metrics[1])
        theirs.append(oracle[1])
    assert max(gaps) <= 0.5
    assert abs(np.mean(ours) - np.mean(theirs)) <= 0.5


def test_residual_identity_for_solutions():
    prob = generate_random_problem(2, seed=3)
    for mode, solver, rep in (("real", solve_real, real_rep_col), ("complex", solve_complex, complex_rep_col)):
        X = solver(prob).X
        rb = frobenius_norm(mat_mul(prob.A, RBMatrix.from_real(X)) - prob.B)
        stacked = np.linalg.norm(rep(prob.A) @ X - rep(prob.B))
        assert abs(rb - stacked) <= 1e-12 * frobenius_norm(prob.B)


def test_residual_transfer_for_arbitrary_x(rng):
    for _ in range(25):
        m, n, d = rng.integers(1, 7, size=3)
        A, B = random_rb(rng, m, n), random_rb(rng, m, d)
        Xr = rng.standard_normal((n, d))
        Xc = Xr + 1j * rng.standard_normal((n, d))
        for X, rep in ((Xr, real_rep_col), (Xc, complex_rep_col)):
            rb = frobenius_norm(mat_mul(A, RBMatrix.from_real(X)) - B)
            assert abs(rb - np.linalg.norm(rep(A) @ X - rep(B))) <= 1e-12 * frobenius_norm(B)


def test_constraint_transfer(rng):
    C = random_rb(rng, 2, 9)
    for X, rep in ((rng.standard_normal((9, 2)), real_rep_col),
                   (rng.standard_normal((9, 2)) + 1j * rng.standard_normal((9, 2)), complex_rep_col)):
        D = mat_mul(C, RBMatrix.from_real(X))
        assert np.allclose(rep(C) @ X, rep(D), atol=1e-13)
        X_bad = X.copy()
        X_bad[0, 0] += 1e-6
        assert frobenius_norm(mat_mul(C, RBMatrix.from_real(X_bad)) - D) > 1e-9
        assert np.linalg.norm(rep(C) @ X_bad - rep(D)) > 1e-9


def test_real_solution_nested_in_complex_space():
    prob = generate_random_problem(1, seed=21)
    Xr = solve_real(prob).X
    Xc = solve_complex(prob).X
    inst = stacked_instance(prob, "complex")
    assert np.linalg.norm(inst.C @ Xr - inst.D) < 1e-12
    res_r = np.linalg.norm(inst.A @ Xr - inst.B)
    res_c = np.linalg.norm(inst.A @ Xc - inst.B)
    assert res_r >= res_c - 1e-10


def test_determinism():
    a = solve_real(generate_random_problem(3, seed=4)).X
    b = solve_real(generate_random_problem(3, seed=4)).X
    assert np.array_equal(a, b)
    a = solve_complex(generate_random_problem(3, seed=4)).X
    b = solve_complex(generate_random_problem(3, seed=4)).X
    assert np.array_equal(a, b)


def test_preconditions(rng):
    with pytest.raises(PreconditionViolated):
        solve_real(_small_problem(rng, m=5, n=4, p=1, d=2))  # m < n + d
    prob = _small_problem(rng, m=12, n=6, p=2, d=1)  # 4p > n but 2p <= n
    with pytest.raises(PreconditionViolated):
        solve_real(prob)
    solve_complex(prob)


def test_rank_deficient_constraint(rng):
    C = RBMatrix.zeros(1, 6)
    prob = RBLSEProblem(random_rb(rng, 12, 6), random_rb(rng, 12, 1), C, random_rb(rng, 1, 1))
    with pytest.raises(RankDeficientConstraint):
        solve_real(prob)
    with pytest.raises(RankDeficientConstraint):
        solve_complex(prob)


# -- flop model -------------------------------------------------------------

def test_flop_estimate_t1_matches_step_table():
    # Step-by-step sums for m=30, n=10, p=2, d=2:
    # real:    1280 + 22800 + 2960 + 128 + 3600 + 240 + 960 + 400
    # complex: 1280 + 46800 + 60480 + 168 + 3600 + 240 + 5760 + 1600
    assert flop_estimate("real", 30, 10, 2, 2) == 32368
    assert flop_estimate("complex", 30, 10, 2, 2) == 119928


def test_flop_estimate_real_cheaper_on_schedule():
    for t in range(1, 10):
        dims = (30 * t, 10 * t, 2 * t, 2)
        assert flop_estimate("real", *dims) < flop_estimate("complex", *dims)


def test_flop_estimate_degenerate_real():
    m, p, d = 20, 2, 3
    n = 4 * p
    expected = (32 * n * p**2 + 8 * m * n**2 - 4 * m * n + 16 * p**2 * d
                + 32 * m * p * d + 2 * n**2 * d)
    assert flop_estimate("real", m, n, p, d) == expected


def test_flop_estimate_rejects_bad_input():
    with pytest.raises(ValueError):
        flop_estimate("real", 30, 7, 2, 2)
    with pytest.raises(ValueError):
        flop_estimate("quaternion", 30, 10, 2, 2)
    with pytest.raises(ValueError):
        flop_estimate("real", 0, 10, 2, 2)

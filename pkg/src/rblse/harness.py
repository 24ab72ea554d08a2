"""Seeded problem generators and the experiment runners.

Dimensions follow the schedule ``m = 30t, n = 10t, p = 2t, d = 2``.  Each
(t, trial) cell draws its own seed with :func:`rblse.rng.trial_seed`, and
that seed is recorded in every output row, so any row can be regenerated
with ``rblse generate --t T --seed SEED``.
"""

from __future__ import annotations

import logging
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__, rng
from .errors import RBLSEError
from .lse import rank_check
from .perturbation import PerturbationSpec, perturbation_trial
from .rbq import RBMatrix, mat_mul
from .solvers import MODES, RBLSEProblem, flop_estimate, solve, stacked_instance

log = logging.getLogger(__name__)

MAX_RETRIES = 8
DEFAULT_TS = (1, 3, 5, 7, 9)


def dimensions(t: int) -> tuple[int, int, int, int]:
    if t < 1:
        raise ValueError(f"t must be a positive integer, got {t}")
    return 30 * t, 10 * t, 2 * t, 2


@dataclass
class ExperimentConfig:
    ts: tuple[int, ...] = DEFAULT_TS
    trials: int = 5
    seed: int = 0
    eps: tuple[float, ...] = (1e-13, 1e-10, 1e-7)
    modes: tuple[str, ...] = MODES


@dataclass
class ExperimentRow:
    t: int
    mode: str
    seed: int
    metrics: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"t": self.t, "mode": self.mode, "seed": self.seed, **self.metrics,
                "version": __version__}


def _rand_rb(seed: int, name: str, shape: tuple[int, int]) -> RBMatrix:
    return RBMatrix(rng.stream(seed, name).random((4, *shape)))


def _constraints_ok(prob: RBLSEProblem) -> bool:
    return all(rank_check(stacked_instance(prob, mode).C) for mode in MODES)


def _with_retries(t: int, seed: int, build):
    for retry in range(MAX_RETRIES + 1):
        s = seed + retry
        prob, extra = build(s)
        if _constraints_ok(prob):
            prob.meta.update(t=t, seed=s, requested_seed=seed, retries=retry,
                             generator=rng.GENERATOR_NAME, version=__version__)
            return prob, extra
        log.warning("t=%d seed=%d: constraint stack rank deficient, retrying", t, s)
    raise RBLSEError(f"no full-rank constraint after {MAX_RETRIES} retries (t={t}, seed={seed})")


def generate_random_problem(t: int, seed: int) -> RBLSEProblem:
    """Uniform ``[0, 1)`` entries in all four components of A, B, C, D."""
    m, n, p, d = dimensions(t)

    def build(s):
        return RBLSEProblem(_rand_rb(s, "A", (m, n)), _rand_rb(s, "B", (m, d)),
                            _rand_rb(s, "C", (p, n)), _rand_rb(s, "D", (p, d))), None

    return _with_retries(t, seed, build)[0]


def generate_consistent_problem(t: int, seed: int, mode: str) -> tuple[RBLSEProblem, np.ndarray]:
    """Random A, C and an exact solution X; ``B = A X`` and ``D = C X``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    m, n, p, d = dimensions(t)

    def build(s):
        A = _rand_rb(s, "A", (m, n))
        C = _rand_rb(s, "C", (p, n))
        X = rng.stream(s, "X0").random((n, d))
        if mode == "complex":
            X = X + 1j * rng.stream(s, "X1").random((n, d))
        Xrb = RBMatrix.from_real(X)
        return RBLSEProblem(A, mat_mul(A, Xrb), C, mat_mul(C, Xrb)), X

    return _with_retries(t, seed, build)


# -- experiments ------------------------------------------------------------

def run_accuracy(config: ExperimentConfig) -> list[ExperimentRow]:
    """Residual metrics for random problems; worst case over trials per (t, mode)."""
    rows = []
    for t in config.ts:
        per_mode: dict[str, list] = {mode: [] for mode in config.modes}
        seeds = []
        for trial in range(config.trials):
            seed = rng.trial_seed(config.seed, t, trial)
            seeds.append(seed)
            try:
                prob = generate_random_problem(t, seed)
                for mode in config.modes:
                    per_mode[mode].append(solve(prob, mode))
            except RBLSEError as exc:
                log.error("accuracy t=%d trial=%d failed: %s", t, trial, exc)
        for mode, sols in per_mode.items():
            if not sols:
                continue
            names = sols[0].metric_names
            worst = [max(sol.metrics[q] for sol in sols) for q in (0, 1)]
            worst_trial = max(range(len(sols)), key=lambda q: max(sols[q].metrics))
            rows.append(ExperimentRow(t, mode, seeds[worst_trial], {
                names[0]: worst[0],
                names[1]: worst[1],
                "trials": len(sols),
                "mean_seconds": statistics.fmean(s.seconds for s in sols),
            }))
    return rows


def run_recovery(config: ExperimentConfig) -> list[ExperimentRow]:
    """``||X_exact - X_hat||_F`` for consistent problems; worst case over trials."""
    rows = []
    for t in config.ts:
        for mode in config.modes:
            errs = []
            for trial in range(config.trials):
                seed = rng.trial_seed(config.seed, t, trial)
                try:
                    prob, X = generate_consistent_problem(t, seed, mode)
                    errs.append((float(np.linalg.norm(X - solve(prob, mode).X)), seed))
                except RBLSEError as exc:
                    log.error("recovery t=%d trial=%d failed: %s", t, trial, exc)
            if not errs:
                continue
            err, seed = max(errs)
            key = "epsR" if mode == "real" else "epsC"
            rows.append(ExperimentRow(t, mode, seed, {key: err, "trials": len(errs)}))
    return rows


def run_perturbation(config: ExperimentConfig) -> list[ExperimentRow]:
    """Forward error vs. first-order bound per (t, eps, mode) cell.

    Every trial uses a fresh problem and perturbation draw.  Cells with
    ``eps == 0`` are flagged ``degenerate`` and never count as violations.
    """
    rows = []
    for t in config.ts:
        for ei, eps in enumerate(config.eps):
            reports: dict[str, list] = {mode: [] for mode in config.modes}
            seeds = []
            for trial in range(config.trials):
                seed = rng.trial_seed(config.seed, t, ei, trial)
                seeds.append(seed)
                try:
                    prob = generate_random_problem(t, seed)
                    for mode in config.modes:
                        spec = PerturbationSpec(eps, seed=rng.trial_seed(seed, 1))
                        reports[mode].append(perturbation_trial(prob, spec, mode))
                except RBLSEError as exc:
                    log.error("perturbation t=%d eps=%g trial=%d failed: %s", t, eps, trial, exc)
            for mode, reps in reports.items():
                if not reps:
                    continue
                errs = [r.forward_error for r in reps]
                bounds = [r.bound for r in reps]
                degenerate = eps == 0.0
                violations = 0 if degenerate else sum(e > b for e, b in zip(errs, bounds))
                ratios = [b / e for e, b in zip(errs, bounds) if e > 0]
                worst = max(range(len(reps)), key=lambda q: errs[q])
                rows.append(ExperimentRow(t, mode, seeds[worst], {
                    "eps_target": eps,
                    "eps_measured": max(r.eps for r in reps),
                    "mean_error": statistics.fmean(errs),
                    "max_error": max(errs),
                    "mean_bound": statistics.fmean(bounds),
                    "min_bound_over_error": min(ratios) if ratios else float("nan"),
                    "median_bound_over_error": statistics.median(ratios) if ratios else float("nan"),
                    "violations": violations,
                    "trials": len(reps),
                    "degenerate": degenerate,
                }))
    return rows


def run_benchmark(config: ExperimentConfig) -> list[ExperimentRow]:
    """Mean and median wall-clock solve time per mode, after one warm-up solve."""
    rows = []
    for t in config.ts:
        seed = rng.trial_seed(config.seed, t)
        prob = generate_random_problem(t, seed)
        times: dict[str, list[float]] = {mode: [] for mode in config.modes}
        for mode in config.modes:
            solve(prob, mode)
        for _ in range(config.trials):
            for mode in config.modes:
                start = time.perf_counter()
                solve(prob, mode)
                times[mode].append(time.perf_counter() - start)
        for mode in config.modes:
            rows.append(ExperimentRow(t, mode, seed, {
                "mean_seconds": statistics.fmean(times[mode]),
                "median_seconds": statistics.median(times[mode]),
                "trials": config.trials,
                "flops": flop_estimate(mode, *dimensions(t)),
            }))
    return rows

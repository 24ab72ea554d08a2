"""Command line interface: ``rblse <verb> [options]``.

Exit status is 0 on success, 1 when a checked property fails (a bound
violation, an accuracy threshold, a failed self-check) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__, harness
from . import io as rio
from .errors import RBLSEError
from .kernels import BACKEND
from .solvers import MODES, solve

# Thresholds the experiment verbs assert before exiting 0.
ACCURACY_LOG10_MAX = -12.0
RECOVERY_MAX = 1e-12


class InputError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _modes(arg: str) -> tuple[str, ...]:
    return MODES if arg == "both" else (arg,)


def _config(args, default_trials: int) -> harness.ExperimentConfig:
    return harness.ExperimentConfig(
        ts=tuple(args.t),
        trials=args.trials if args.trials is not None else default_trials,
        seed=args.seed,
        eps=tuple(getattr(args, "eps", None) or (1e-13, 1e-10, 1e-7)),
        modes=_modes(args.mode),
    )


def cmd_generate(args) -> int:
    if len(args.t) != 1:
        raise InputError("generate takes exactly one --t value")
    t = args.t[0]
    if args.consistent:
        if args.mode == "both":
            raise InputError("--consistent needs --mode real or --mode complex")
        prob, _ = harness.generate_consistent_problem(t, args.seed, args.mode)
    else:
        prob = harness.generate_random_problem(t, args.seed)
    text = json.dumps(rio.problem_to_dict(prob))
    _emit(text, args.out)
    return 0


def cmd_solve(args) -> int:
    prob = rio.read_problem(args.problem)
    sols = [solve(prob, mode) for mode in _modes(args.mode)]
    if args.out:
        if len(sols) != 1:
            raise InputError("--out with a solution file needs a single --mode")
        rio.write_solution(args.out, sols[0])
    else:
        payload = [rio.solution_to_dict(s) for s in sols]
        _emit(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2), None)
    return 0


def cmd_accuracy(args) -> int:
    rows = harness.run_accuracy(_config(args, 5))
    _emit(rio.format_table(rows, args.format), args.out)
    bad = [r for r in rows if any(v >= ACCURACY_LOG10_MAX for k, v in r.metrics.items()
                                  if k.startswith("eps"))]
    return 1 if bad else 0


def cmd_recovery(args) -> int:
    rows = harness.run_recovery(_config(args, 5))
    _emit(rio.format_table(rows, args.format), args.out)
    bad = [r for r in rows if any(v >= RECOVERY_MAX for k, v in r.metrics.items()
                                  if k.startswith("eps"))]
    return 1 if bad else 0


def cmd_perturbation(args) -> int:
    rows = harness.run_perturbation(_config(args, 50))
    _emit(rio.format_table(rows, args.format), args.out)
    return 1 if any(r.metrics["violations"] for r in rows) else 0


def cmd_benchmark(args) -> int:
    rows = harness.run_benchmark(_config(args, 50))
    _emit(rio.format_table(rows, args.format), args.out)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all(cases=args.cases, seed=args.seed)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<42s} worst={r.worst:.3e} tol={r.tol:.1e}")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rblse", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"rblse {__version__} (kernels: {BACKEND})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, ts=harness.DEFAULT_TS, trials=True, fmt=True):
        p.add_argument("--t", type=int, nargs="+", default=list(ts), metavar="T",
                       help="scale parameter(s): m=30t, n=10t, p=2t, d=2")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--mode", choices=("real", "complex", "both"), default="both")
        p.add_argument("--out", help="output path (default: stdout)")
        if trials:
            p.add_argument("--trials", type=int, default=None)
        if fmt:
            p.add_argument("--format", choices=("csv", "text", "json"), default="text")

    p = sub.add_parser("generate", help="write a seeded random problem as JSON")
    common(p, ts=(1,), trials=False, fmt=False)
    p.add_argument("--consistent", action="store_true",
                   help="build B = A X, D = C X from a random exact X of the given --mode")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve a problem file")
    p.add_argument("problem")
    p.add_argument("--mode", choices=("real", "complex", "both"), default="both")
    p.add_argument("--out", help="solution JSON path (single mode only)")
    p.set_defaults(func=cmd_solve)

    for name, func, help_ in (
        ("accuracy", cmd_accuracy, "residual metrics on random problems"),
        ("recovery", cmd_recovery, "recovery error on consistent problems"),
        ("benchmark", cmd_benchmark, "solve-time comparison of the two modes"),
    ):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("perturbation", help="forward errors vs first-order bounds")
    common(p, ts=(1, 5, 9))
    p.add_argument("--eps", type=float, nargs="+", default=[1e-13, 1e-10, 1e-7])
    p.set_defaults(func=cmd_perturbation)

    p = sub.add_parser("verify", help="run the invariant self-check suite")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if any(t < 1 for t in getattr(args, "t", [1])):
            raise InputError("--t values must be positive integers")
        if getattr(args, "trials", None) is not None and args.trials < 1:
            raise InputError("--trials must be positive")
        return args.func(args)
    except (InputError, OSError, RBLSEError) as exc:
        print(f"rblse: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Compare the compiled and pure-Python kernel backends.

Times Householder QR and forward substitution on the shapes the solvers
actually factor (the conjugate transpose of the stacked constraint,
n' x p'), then whole solves with each backend swapped in.

    python benchmarks/bench_kernels.py --t 1 3 5 9 --repeats 20
"""

import argparse
import contextlib
import statistics
import time

import numpy as np

from rblse import kernels
from rblse.harness import dimensions, generate_random_problem
from rblse.solvers import solve


@contextlib.contextmanager
def use_backend(name):
    impl = kernels.get_backend(name)
    saved = kernels.householder_qr, kernels.forward_substitution
    kernels.householder_qr, kernels.forward_substitution = impl.householder_qr, impl.forward_substitution
    try:
        yield impl
    finally:
        kernels.householder_qr, kernels.forward_substitution = saved


def median_time(fn, repeats):
    fn()
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def kernel_rows(t, repeats, backends, rng):
    m, n, p, d = dimensions(t)
    shapes = {"real": (n, 4 * p), "complex": (n, 2 * p)}
    rows = []
    for mode, (rows_, cols) in shapes.items():
        M = rng.standard_normal((rows_, cols))
        if mode == "complex":
            M = M + 1j * rng.standard_normal(M.shape)
        _, R = np.linalg.qr(M)
        L = np.triu(R[:cols]).conj().T
        B = rng.standard_normal((cols, d)).astype(M.dtype)
        for name in backends:
            impl = kernels.get_backend(name)
            rows.append((t, mode, "qr", f"{rows_}x{cols}", name,
                         median_time(lambda: impl.householder_qr(M), repeats)))
            rows.append((t, mode, "fsub", f"{cols}x{cols}", name,
                         median_time(lambda: impl.forward_substitution(L, B), repeats)))
    return rows


def solve_rows(t, repeats, backends):
    prob = generate_random_problem(t, seed=t)
    rows = []
    for mode in ("real", "complex"):
        for name in backends:
            with use_backend(name):
                rows.append((t, mode, "solve", "-", name,
                             median_time(lambda: solve(prob, mode), repeats)))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--t", type=int, nargs="+", default=[1, 3, 5, 9])
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args(argv)

    backends = ["python"]
    try:
        kernels.get_backend("cython")
        backends.append("cython")
    except ImportError:
        print("compiled kernels not built; timing the python backend only")

    rng = np.random.default_rng(0)
    rows = []
    for t in args.t:
        rows += kernel_rows(t, args.repeats, backends, rng)
        rows += solve_rows(t, args.repeats, backends)

    print(f"{'t':>3} {'mode':>8} {'op':>6} {'shape':>9} {'backend':>8} {'median ms':>10} {'speedup':>8}")
    base = {}
    for t, mode, op, shape, name, sec in rows:
        key = (t, mode, op)
        if name == "python":
            base[key] = sec
        speedup = base[key] / sec if key in base else float("nan")
        print(f"{t:>3} {mode:>8} {op:>6} {shape:>9} {name:>8} {sec * 1e3:>10.3f} {speedup:>8.2f}")


if __name__ == "__main__":
    main()

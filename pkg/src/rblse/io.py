"""JSON problem/solution files and result tables.

Problem file::

    {"format": "rblse-problem", "version": 1,
     "meta": {"m": .., "n": .., "p": .., "d": .., "seed": .., "generator": .., ...},
     "A": <RB matrix>, "B": <RB matrix>, "C": <RB matrix>, "D": <RB matrix>}

where an RB matrix is ``{"m": m, "n": n, "planes": {"r": rows, "i": rows,
"j": rows, "k": rows}}`` with row-major nested lists.  Floats are written
with Python's shortest round-trip repr, so reading back is bit-exact.

Solution file::

    {"format": "rblse-solution", "version": 1, "mode": "real" | "complex",
     "X": {"real": rows, "imag": rows}, "metrics": {"eps1": .., "eps2": ..},
     "seconds": ..}

Non-finite floats (a metric of ``-inf``) are stored as the strings
``"inf"``, ``"-inf"`` or ``"nan"``.
"""

from __future__ import annotations

import csv
import json
import math
from io import StringIO
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DimensionMismatch, ProblemFileError
from .rbq import RBMatrix
from .solvers import RBLSEProblem, RBLSESolution

PROBLEM_FORMAT = "rblse-problem"
SOLUTION_FORMAT = "rblse-solution"
FORMAT_VERSION = 1


def _encode_float(x: float):
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def _decode_float(x) -> float:
    return float(x)


def problem_to_dict(prob: RBLSEProblem) -> dict:
    m, n, p, d = prob.dims
    meta = {k: v for k, v in prob.meta.items() if k not in ("m", "n", "p", "d")}
    meta = {"m": m, "n": n, "p": p, "d": d, **meta}
    meta.setdefault("version", __version__)
    return {
        "format": PROBLEM_FORMAT,
        "version": FORMAT_VERSION,
        "meta": meta,
        **{name: M.to_dict() for name, M in zip("ABCD", (prob.A, prob.B, prob.C, prob.D))},
    }


def _check_header(obj, expected: str) -> None:
    if not isinstance(obj, dict):
        raise ProblemFileError("top-level JSON value must be an object")
    if obj.get("format") != expected:
        raise ProblemFileError(f"expected format {expected!r}, got {obj.get('format')!r}")
    if obj.get("version") != FORMAT_VERSION:
        raise ProblemFileError(f"unsupported format version {obj.get('version')!r}")


def problem_from_dict(obj) -> RBLSEProblem:
    _check_header(obj, PROBLEM_FORMAT)
    try:
        mats = [RBMatrix.from_dict(obj[name]) for name in "ABCD"]
        prob = RBLSEProblem(*mats, meta=dict(obj.get("meta", {})))
    except KeyError as exc:
        raise ProblemFileError(f"missing matrix {exc}") from exc
    except DimensionMismatch as exc:
        raise ProblemFileError(f"inconsistent shapes: {exc}") from exc
    meta = obj.get("meta", {})
    for key, val in zip("mnpd", prob.dims):
        if key in meta and meta[key] != val:
            raise ProblemFileError(f"metadata {key}={meta[key]} disagrees with matrices ({val})")
    return prob


def _load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: malformed JSON ({exc})") from exc


def write_problem(path, prob: RBLSEProblem) -> None:
    Path(path).write_text(json.dumps(problem_to_dict(prob)), encoding="utf-8")


def read_problem(path) -> RBLSEProblem:
    return problem_from_dict(_load_json(path))


def solution_to_dict(sol: RBLSESolution) -> dict:
    X = np.asarray(sol.X)
    return {
        "format": SOLUTION_FORMAT,
        "version": FORMAT_VERSION,
        "mode": sol.mode,
        "X": {"real": X.real.tolist(), "imag": np.imag(X).tolist()},
        "metrics": {name: _encode_float(v) for name, v in zip(sol.metric_names, sol.metrics)},
        "seconds": sol.seconds,
        "software_version": __version__,
    }


def solution_from_dict(obj) -> RBLSESolution:
    _check_header(obj, SOLUTION_FORMAT)
    try:
        mode = obj["mode"]
        re = np.array(obj["X"]["real"], dtype=np.float64)
        im = np.array(obj["X"]["imag"], dtype=np.float64)
        metrics = tuple(_decode_float(v) for v in obj["metrics"].values())
        seconds = float(obj.get("seconds", 0.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ProblemFileError(f"malformed solution file: {exc}") from exc
    if mode not in ("real", "complex") or re.shape != im.shape or len(metrics) != 2:
        raise ProblemFileError("malformed solution file")
    X = re if mode == "real" else re + 1j * im
    return RBLSESolution(mode, X, metrics, seconds)


def write_solution(path, sol: RBLSESolution) -> None:
    Path(path).write_text(json.dumps(solution_to_dict(sol)), encoding="utf-8")


def read_solution(path) -> RBLSESolution:
    return solution_from_dict(_load_json(path))


# -- tables -----------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _columns(dicts: list[dict]) -> list[str]:
    cols: list[str] = []
    for d in dicts:
        cols.extend(k for k in d if k not in cols)
    if "version" in cols:
        cols.remove("version")
        cols.append("version")
    return cols


def format_table(rows, fmt: str = "text") -> str:
    """Render experiment rows as ``csv``, aligned ``text`` or ``json``."""
    dicts = [r.as_dict() if hasattr(r, "as_dict") else dict(r) for r in rows]
    if fmt == "json":
        clean = [{k: _encode_float(v) if isinstance(v, float) else v for k, v in d.items()}
                 for d in dicts]
        return json.dumps(clean, indent=2)
    cols = _columns(dicts)
    cells = [[_cell(d.get(c, "")) for c in cols] for d in dicts]
    if fmt == "csv":
        buf = StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        writer.writerows(cells)
        return buf.getvalue()
    if fmt == "text":
        def short(v: str) -> str:
            try:
                f = float(v)
            except ValueError:
                return v
            return v if v.lstrip("-").isdigit() else f"{f:.4e}"

        cells = [[short(c) for c in row] for row in cells]
        widths = [max([len(c)] + [len(row[q]) for row in cells]) for q, c in enumerate(cols)]
        lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")

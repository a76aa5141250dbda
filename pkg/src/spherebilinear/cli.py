"""Command-line interface: ``sphere-bilinear <command> ...``.

Every command prints exactly one JSON document on stdout.  Diagnostics go to
stderr.  Exit codes: 0 success, 1 verification failure, 2 usage/input/budget
error.  Floats are written with Python's shortest round-trip repr, so parsing
and re-serializing a report reproduces it byte for byte.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .closedform2d import (
    CandidateValue,
    diagonal_bilinear_max,
    quadratic_max,
    symmetric_candidates,
    symmetric_max,
)
from .core import Assignment, CoefficientMatrix, MultiplierPair, ProblemInstance, extract_multipliers
from .exceptions import (
    BudgetError,
    DimensionError,
    NotSymmetricError,
    NotUnitError,
    UndefinedRatioError,
)
from .normal_eq import residual_report, svd_bound
from .ratio import grothendieck_ratio, ratio_search
from .solver import SolverConfig, grid_oracle, multistart

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
VERIFY_PRIMAL_TOL = 1e-7
VERIFY_TRACE_TOL = 1e-9
MULTIPLIER_WARN_TOL = 1e-9


class UsageError(Exception):
    pass


def _clean(obj):
    """Convert numpy scalars/arrays to plain JSON values; NaN/Inf become null."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    return obj


def dumps(payload) -> str:
    return json.dumps(_clean(payload), indent=2, allow_nan=False)


def load_matrix_file(path) -> CoefficientMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise UsageError(f"{path}: expected an object with 'n' and 'entries'")
    n, entries = doc["n"], doc["entries"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise UsageError(f"{path}: 'n' must be a positive integer")
    if not isinstance(entries, list) or len(entries) != n:
        raise UsageError(f"{path}: 'entries' must hold {n} rows")
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise UsageError(f"{path}: row {i} must hold {n} numbers")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise UsageError(f"{path}: row {i} contains a non-finite or non-numeric entry")
    return CoefficientMatrix(np.array(entries, dtype=np.float64))


def _base_report(command, inputs):
    return {
        "command": command,
        "input": inputs,
        "value": None,
        "multipliers": None,
        "residuals": None,
        "bounds": None,
        "assignment": None,
        "meta": {
            "seed": None,
            "tol": None,
            "iterations": None,
            "converged": None,
            "version": __version__,
        },
    }


def _config(args):
    try:
        return SolverConfig(tol=args.tol, max_iters=args.max_iters, starts=args.starts, seed=args.seed)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _instance(matrix, d):
    try:
        return ProblemInstance(matrix, d)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_solve(args):
    matrix = load_matrix_file(args.matrix)
    instance = _instance(matrix, args.d)
    config = _config(args)
    rep = multistart(instance, config)
    out = _base_report("solve", {"matrix": matrix.tolist(), "d": instance.d, "starts": config.starts})
    out["value"] = rep.value
    out["multipliers"] = rep.multipliers.tolist()
    res = residual_report(instance, rep.assignment, rep.multipliers).as_dict()
    res["stationarity"] = rep.stationarity_residual
    out["residuals"] = res
    out["bounds"] = svd_bound(instance, observed=rep.value).as_dict()
    out["assignment"] = rep.assignment.tolist()
    out["meta"].update(
        seed=config.seed, tol=config.tol, iterations=rep.iterations,
        converged=rep.converged, best_start=rep.best_start,
    )
    return out, EXIT_OK


def cmd_oracle(args):
    matrix = load_matrix_file(args.matrix)
    instance = _instance(matrix, args.d)
    if not args.resolution > 0:
        raise UsageError("--resolution must be positive")
    res = grid_oracle(instance, args.resolution)
    out = _base_report("oracle", {"matrix": matrix.tolist(), "d": instance.d, "resolution": args.resolution})
    out["value"] = res.value
    out["oracle"] = {
        "grid_points": res.grid_points,
        "resolution": res.resolution,
        "error_bound": res.error_bound,
        "x": res.x,
    }
    return out, EXIT_OK


def cmd_bound(args):
    matrix = load_matrix_file(args.matrix)
    instance = _instance(matrix, args.d)
    config = _config(args)
    rep = svd_bound(instance, config=config)
    out = _base_report("bound", {"matrix": matrix.tolist(), "d": instance.d})
    out["value"] = rep.observed
    out["bounds"] = rep.as_dict()
    out["meta"].update(seed=config.seed, tol=config.tol)
    return out, EXIT_OK


def cmd_closed_form(args):
    matrix = load_matrix_file(args.matrix)
    A = matrix.entries
    if A.shape != (2, 2):
        raise UsageError(f"closed forms need a 2x2 matrix, got {A.shape[0]}x{A.shape[1]}")
    out = _base_report("closed-form", {"matrix": matrix.tolist(), "case": args.case, "d": 2})
    if args.case == "quadratic":
        value = quadratic_max(A)
        cands = [CandidateValue(value, "quadratic", True)]
        winner = "quadratic"
    elif args.case == "diagonal":
        if A[0, 1] != 0 or A[1, 0] != 0:
            raise UsageError("--case diagonal needs a diagonal matrix")
        value = diagonal_bilinear_max(A[0, 0], A[1, 1])
        cands = [CandidateValue(value, "diagonal", True)]
        winner = "diagonal"
    else:
        cands = symmetric_candidates(A)
        value, winner = symmetric_max(A)
    out["value"] = value
    out["candidates"] = [c.as_dict() for c in cands]
    out["winner"] = winner
    return out, EXIT_OK


def cmd_ratio(args):
    config = _config(args)
    if args.search is not None:
        try:
            rep = ratio_search(args.search, args.d, args.trials, args.seed, config, args.distribution)
        except (TypeError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        inputs = {"search": args.search, "d": args.d, "trials": args.trials,
                  "distribution": args.distribution}
    else:
        matrix = load_matrix_file(args.matrix)
        _instance(matrix, args.d)
        rep = grothendieck_ratio(matrix, args.d, config)
        inputs = {"matrix": matrix.tolist(), "d": args.d}
    sol = rep.vector_solution
    out = _base_report("ratio", inputs)
    out["value"] = rep.vector_value
    out["multipliers"] = sol.multipliers.tolist()
    out["assignment"] = sol.assignment.tolist()
    out["bounds"] = {"svd_upper": rep.svd_upper}
    out["ratio"] = {
        "ratio": rep.ratio,
        "vector_value": rep.vector_value,
        "sign_value": rep.sign_value,
        "x_signs": rep.x_signs,
        "y_signs": rep.y_signs,
        "matrix": rep.matrix.tolist(),
        "trial": rep.trial,
        "heuristic_upper_uncertainty": rep.heuristic_upper_uncertainty,
    }
    out["meta"].update(
        seed=config.seed, tol=config.tol, iterations=sol.iterations, converged=sol.converged,
    )
    return out, EXIT_OK


def _report_arrays(doc):
    try:
        x = np.array(doc["assignment"]["x"], dtype=np.float64)
        y = np.array(doc["assignment"]["y"], dtype=np.float64)
        lam = np.array(doc["multipliers"]["lambda"], dtype=np.float64)
        mu = np.array(doc["multipliers"]["mu"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"report lacks a usable assignment/multipliers: {exc}") from exc
    return x, y, lam, mu


def cmd_verify(args):
    matrix = load_matrix_file(args.matrix)
    try:
        with open(args.report, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read report {args.report}: {exc}") from exc
    x, y, lam, mu = _report_arrays(doc)
    n = matrix.n
    if x.ndim != 2 or x.shape != y.shape or x.shape[0] != n or lam.shape != (n,) or mu.shape != (n,):
        raise UsageError(
            f"report shapes (x {x.shape}, y {y.shape}, lambda {lam.shape}, mu {mu.shape}) "
            f"do not match a {n}x{n} matrix"
        )
    try:
        a = Assignment(x, y)
    except (NotUnitError, DimensionError, ValueError) as exc:
        raise UsageError(f"report assignment is not a valid point: {exc}") from exc
    instance = ProblemInstance(matrix, a.d)
    reported = MultiplierPair(lam, mu)
    recomputed = extract_multipliers(instance, a)
    disagreement = float(max(np.abs(reported.lam - recomputed.lam).max(),
                             np.abs(reported.mu - recomputed.mu).max()))
    if disagreement > MULTIPLIER_WARN_TOL:
        print(
            f"warning: reported multipliers differ from recomputed ones by {disagreement:.3e}",
            file=sys.stderr,
        )
    res = residual_report(instance, a, reported)
    res_indep = residual_report(instance, a, recomputed)
    ok = (
        res.primal_x <= VERIFY_PRIMAL_TOL
        and res.primal_y <= VERIFY_PRIMAL_TOL
        and res.trace_gap <= VERIFY_TRACE_TOL
    )
    out = _base_report("verify", {"matrix": matrix.tolist(), "report": str(args.report), "d": a.d})
    out["value"] = recomputed.lam.sum()
    out["multipliers"] = reported.tolist()
    out["residuals"] = res.as_dict()
    out["verify"] = {
        "passed": ok,
        "primal_tol": VERIFY_PRIMAL_TOL,
        "trace_tol": VERIFY_TRACE_TOL,
        "recomputed_multipliers": recomputed.tolist(),
        "multiplier_disagreement": disagreement,
        "recomputed_residuals": res_indep.as_dict(),
    }
    out["assignment"] = a.tolist()
    return out, EXIT_OK if ok else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sphere-bilinear",
        description="Maximize sum a_kj <x_k, y_j> over unit vectors and check the results.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--starts", type=int, default=64)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--max-iters", type=int, default=10000)

    p = sub.add_parser("solve", help="multistart alternating ascent")
    p.add_argument("matrix")
    p.add_argument("--d", type=int, default=2)
    solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="grid brute force (n <= 3, d <= 2)")
    p.add_argument("matrix")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--resolution", type=float, default=0.01)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bound", help="singular-value upper bounds")
    p.add_argument("matrix")
    p.add_argument("--d", type=int, default=2)
    solver_flags(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("closed-form", help="2x2 closed-form values")
    p.add_argument("matrix")
    p.add_argument("--case", choices=("quadratic", "diagonal", "symmetric"), default="symmetric")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("ratio", help="vector optimum / sign optimum")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("matrix", nargs="?")
    src.add_argument("--search", type=int, metavar="N", help="random search over N x N matrices")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--distribution", choices=("uniform", "gaussian"), default="uniform")
    solver_flags(p)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("verify", help="recheck a solve report against its matrix")
    p.add_argument("matrix")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except (UsageError, BudgetError, NotSymmetricError, UndefinedRatioError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(dumps(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Maximizers and brute-force oracles for the bilinear sphere problem.

``alternating_ascent`` repeats two exact block maximizations::

    y_j <- v_j / |v_j|,   v_j = sum_k a_kj x_k
    x_k <- w_k / |w_k|,   w_k = sum_j a_kj y_j

Each half-step maximizes B over one side with the other fixed, so the
objective never decreases.  ``multistart`` runs the ascent from many starts
at once; all starts evolve independently and are stacked along a leading
batch axis purely for speed.

Random starts use Philox4x64-10 (numpy's ``Philox`` bit generator, a
counter-based generator) with key ``(seed, 0)`` and initial counter
``(0, 0, block_index, start_index)``.  Each block draws ``d`` standard normals
through ``numpy.random.Generator.standard_normal`` and is normalized.  Blocks
0..n-1 are the x-blocks, n..2n-1 the y-blocks.
"""

from dataclasses import dataclass
import functools
import itertools
import math

import numpy as np

from ._validation import check_positive_int, check_seed
from .core import (
    Assignment,
    CoefficientMatrix,
    ProblemInstance,
    SolveReport,
    as_matrix,
    check_compatible,
    extract_multipliers,
)
from .exceptions import BudgetError

SIGN_ENUMERATION_MAX_N = 24
ORACLE_MAX_N = 3
ORACLE_MAX_D = 2
TIE_TOL = 1e-12
_SIGN_CHUNK = 1 << 15


@dataclass(frozen=True)
class SolverConfig:
    """Stopping rule and start budget for the ascent.

    A run has converged once an iteration improves the objective by less than
    ``tol`` *and* the stationarity residual is at most ``residual_tol``.
    """

    tol: float = 1e-12
    max_iters: int = 10000
    starts: int = 64
    seed: int = 0
    residual_tol: float = 1e-9

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if not self.residual_tol > 0:
            raise ValueError(f"residual_tol must be positive, got {self.residual_tol}")
        check_positive_int(self.max_iters, "max_iters")
        check_positive_int(self.starts, "starts")
        check_seed(self.seed)


@dataclass(frozen=True)
class OracleResult:
    value: float
    grid_points: int
    resolution: float
    error_bound: float
    x: np.ndarray = None


# -- batched kernels --------------------------------------------------------
# X, Y have shape (S, n, d).  Products are formed by broadcasting and summed
# over a fixed axis so every start's arithmetic is independent of the batch.


def _combine_cols(A, X):
    """``V[s, j] = sum_k a_kj X[s, k]``."""
    return (A[None, :, :, None] * X[:, :, None, :]).sum(axis=1)


def _combine_rows(A, Y):
    """``W[s, k] = sum_j a_kj Y[s, j]``."""
    return (A[None, :, :, None] * Y[:, None, :, :]).sum(axis=2)


def _objective(A, X, Y):
    G = (X[:, :, None, :] * Y[:, None, :, :]).sum(axis=3)
    return (A[None] * G).sum(axis=(1, 2))


def _normalize_or_keep(V, prev):
    norms = np.sqrt((V * V).sum(axis=2))
    out = prev.copy()
    nz = norms > 0
    out[nz] = V[nz] / norms[nz][:, None]
    return out


def half_step_y(A, X, Y):
    """Best y given x; blocks with ``v_j = 0`` keep their previous value."""
    return _normalize_or_keep(_combine_cols(A, X), Y)


def half_step_x(A, X, Y):
    """Best x given y; blocks with ``w_k = 0`` keep their previous value."""
    return _normalize_or_keep(_combine_rows(A, Y), X)


def _residual(A, X, Y):
    W = _combine_rows(A, Y)
    V = _combine_cols(A, X)
    lam = (W * X).sum(axis=2)
    mu = (V * Y).sum(axis=2)
    rx = np.sqrt(((W - lam[:, :, None] * X) ** 2).sum(axis=2)).max(axis=1)
    ry = np.sqrt(((V - mu[:, :, None] * Y) ** 2).sum(axis=2)).max(axis=1)
    return np.maximum(rx, ry)


def _ascend(A, X, Y, config):
    X = np.array(X, dtype=np.float64)
    Y = np.array(Y, dtype=np.float64)
    S = X.shape[0]
    value = _objective(A, X, Y)
    iterations = np.zeros(S, dtype=np.int64)
    converged = np.zeros(S, dtype=bool)
    residual = np.full(S, np.inf)
    active = np.arange(S)
    for it in range(1, config.max_iters + 1):
        Xa, Ya = X[active], Y[active]
        Ya = half_step_y(A, Xa, Ya)
        Xa = half_step_x(A, Xa, Ya)
        new = _objective(A, Xa, Ya)
        res = _residual(A, Xa, Ya)
        done = (new - value[active] < config.tol) & (res <= config.residual_tol)
        X[active], Y[active] = Xa, Ya
        value[active] = new
        residual[active] = res
        iterations[active] = it
        converged[active[done]] = True
        active = active[~done]
        if active.size == 0:
            break
    return X, Y, value, residual, iterations, converged


def _report(instance, X, Y, residual, iterations, converged, starts_used=1, best_start=0):
    a = Assignment(X, Y)
    return SolveReport(
        value=float(_objective(instance.A, a.x[None], a.y[None])[0]),
        assignment=a,
        multipliers=extract_multipliers(instance, a),
        stationarity_residual=float(residual),
        iterations=int(iterations),
        converged=bool(converged),
        starts_used=starts_used,
        best_start=best_start,
    )


def alternating_ascent(
    instance: ProblemInstance, start: Assignment, config: SolverConfig = SolverConfig()
) -> SolveReport:
    check_compatible(instance, start)
    X, Y, _, res, its, conv = _ascend(instance.A, start.x[None], start.y[None], config)
    return _report(instance, X[0], Y[0], res[0], its[0], conv[0])


def _block_rng(seed, start_index, block_index):
    bitgen = np.random.Philox(counter=[0, 0, block_index, start_index], key=[seed, 0])
    return np.random.Generator(bitgen)


def random_block(seed, start_index, block_index, d):
    """Uniform point on the unit sphere in R^d for one block of one start."""
    rng = _block_rng(seed, start_index, block_index)
    while True:
        g = rng.standard_normal(d)
        norm = math.sqrt(float(g @ g))
        if norm > 0:
            return g / norm


@functools.lru_cache(maxsize=64)
def _cached_starts(n, d, starts, seed):
    X = np.zeros((starts, n, d))
    Y = np.zeros((starts, n, d))
    X[0, :, 0] = 1.0
    Y[0, :, 0] = 1.0
    for s in range(1, starts):
        for k in range(n):
            X[s, k] = random_block(seed, s, k, d)
            Y[s, k] = random_block(seed, s, n + k, d)
    X.setflags(write=False)
    Y.setflags(write=False)
    return X, Y


def start_assignments(n, d, config: SolverConfig):
    """Stacked x- and y-starts of shape ``(starts, n, d)``; start 0 is all ``e_1``."""
    return _cached_starts(n, d, config.starts, config.seed)


def multistart(
    instance: ProblemInstance, config: SolverConfig = SolverConfig(), extra_starts=()
) -> SolveReport:
    """Best ascent over ``config.starts`` starts (plus any ``extra_starts``).

    Extra starts are appended after the generated ones.  The winner is the
    highest value; values within 1e-12 of each other go to the lower index.
    """
    X0, Y0 = start_assignments(instance.n, instance.d, config)
    extra = list(extra_starts)
    for a in extra:
        check_compatible(instance, a)
    if extra:
        X0 = np.concatenate([X0, np.stack([a.x for a in extra])])
        Y0 = np.concatenate([Y0, np.stack([a.y for a in extra])])
    X, Y, value, res, its, conv = _ascend(instance.A, X0, Y0, config)
    best = 0
    for s in range(1, X.shape[0]):
        if value[s] > value[best] + TIE_TOL:
            best = s
    return _report(
        instance, X[best], Y[best], res[best], its[best], conv[best],
        starts_used=X.shape[0], best_start=best,
    )


def _sign_rows(start, stop, n):
    """Sign vectors for enumeration indices ``start..stop-1``; first entry fixed to +1."""
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n - 1, dtype=np.int64)[None, :]) & 1
    rows = np.ones((stop - start, n))
    rows[:, 1:] = 1.0 - 2.0 * bits
    return rows


def sign_enumeration(matrix):
    """Exact maximum of ``x^T A y`` over ``x, y`` in ``{-1, +1}^n``.

    For fixed ``x`` the best ``y`` is ``sign(A^T x)``, giving
    ``sum_j |sum_k a_kj x_k|``, so only ``x`` is enumerated (with ``x_1 = +1``,
    since ``-x`` gives the same value).  Returns ``(value, x_signs, y_signs)``.
    """
    A = as_matrix(matrix).entries
    n = A.shape[0]
    if n > SIGN_ENUMERATION_MAX_N:
        raise BudgetError(
            f"sign enumeration needs 2^{n - 1} sign vectors; budget allows n <= "
            f"{SIGN_ENUMERATION_MAX_N}"
        )
    total = 1 << (n - 1)
    best_val, best_x = -np.inf, None
    for lo in range(0, total, _SIGN_CHUNK):
        rows = _sign_rows(lo, min(lo + _SIGN_CHUNK, total), n)
        vals = np.abs(rows @ A).sum(axis=1)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_x = vals[i], rows[i]
    x = best_x.copy()
    y = np.where(A.T @ x >= 0, 1.0, -1.0)
    return float(x @ A @ y), x, y


def lipschitz_bound(matrix) -> float:
    return float(np.abs(as_matrix(matrix).entries).sum())


def grid_oracle(instance: ProblemInstance, resolution: float) -> OracleResult:
    """Brute-force maximum over an angular grid of x-blocks (n <= 3, d <= 2).

    The y-blocks are maximized exactly: for fixed x the optimum is
    ``sum_j |v_j|`` with ``v_j = sum_k a_kj x_k``.  For d = 2 the first x-block
    is pinned to angle 0 (a common rotation of every block leaves B unchanged)
    and the others range over ``m = ceil(2*pi / resolution)`` equally spaced
    angles.  For d = 1 the sphere is ``{-1, +1}`` and the search is exhaustive.
    ``error_bound = sum|a_kj| * resolution``.
    """
    A = instance.A
    n, d = instance.n, instance.d
    if n > ORACLE_MAX_N or d > ORACLE_MAX_D:
        raise BudgetError(
            f"grid oracle covers n <= {ORACLE_MAX_N} and d <= {ORACLE_MAX_D}; "
            f"got n={n}, d={d}"
        )
    if not resolution > 0:
        raise ValueError(f"resolution must be positive, got {resolution}")
    error_bound = lipschitz_bound(instance.matrix) * resolution

    if d == 1:
        best_val, best_x, count = -np.inf, None, 0
        for signs in itertools.product((1.0, -1.0), repeat=n):
            x = np.array(signs)
            val = float(np.abs(x @ A).sum())
            count += 1
            if val > best_val:
                best_val, best_x = val, x
        return OracleResult(best_val, count, float(resolution), error_bound, best_x[:, None])

    m = max(1, math.ceil(2 * math.pi / resolution))
    theta = 2 * math.pi * np.arange(m) / m
    circle = np.stack([np.cos(theta), np.sin(theta)], axis=1)  # (m, 2)
    # V[j] accumulates sum_k a_kj x_k over the product grid of blocks 2..n.
    V = np.broadcast_to(A[0][:, None] * np.array([1.0, 0.0])[None, :], (n, 2))
    V = V[None]  # (1, n, 2)
    for k in range(1, n):
        V = (V[:, None, :, :] + A[k][None, None, :, None] * circle[None, :, None, :])
        V = V.reshape(-1, n, 2)
    vals = np.sqrt((V * V).sum(axis=2)).sum(axis=1)
    i = int(np.argmax(vals))
    # Recover the grid angles of the winning point from its flat index.
    angles = [0.0]
    rem = i
    digits = []
    for _ in range(n - 1):
        digits.append(rem % m)
        rem //= m
    angles.extend(theta[dgt] for dgt in reversed(digits))
    x = np.array([[math.cos(a), math.sin(a)] for a in angles])
    return OracleResult(float(vals[i]), int(vals.size), float(resolution), error_bound, x)

"""Empirical Grothendieck ratios: vector optimum over sign optimum.

The vector optimum comes from the (heuristic) multistart ascent and is only a
certified *lower* bound.  The embedded sign optimum is always added as an
extra start, so the reported vector value is at least the sign value and the
ratio is at least one.  ``svd_upper`` is a rigorous upper envelope.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_positive_int, check_seed
from .core import CoefficientMatrix, ProblemInstance, SolveReport, as_matrix, embed_signs
from .exceptions import UndefinedRatioError
from .linalg import singular_values
from .solver import SolverConfig, multistart, sign_enumeration

HEURISTIC_NOTE = (
    "vector_value is attained by the returned assignment (a lower bound on the "
    "true vector optimum); svd_upper = n*d*sigma_1(A) bounds it from above"
)
DISTRIBUTIONS = ("uniform", "gaussian")


@dataclass(frozen=True)
class RatioReport:
    matrix: CoefficientMatrix
    d: int
    vector_value: float
    sign_value: float
    ratio: float
    vector_solution: SolveReport
    x_signs: np.ndarray
    y_signs: np.ndarray
    svd_upper: float
    heuristic_upper_uncertainty: str = HEURISTIC_NOTE
    trial: int = 0


def grothendieck_ratio(matrix, d, config: SolverConfig = SolverConfig()) -> RatioReport:
    matrix = as_matrix(matrix)
    instance = ProblemInstance(matrix, d)
    sign_value, xs, ys = sign_enumeration(matrix)
    if sign_value <= 0:
        raise UndefinedRatioError("sign optimum is zero (zero matrix); ratio undefined")
    solution = multistart(instance, config, extra_starts=[embed_signs(xs, ys, instance.d)])
    sigma1 = float(singular_values(matrix.entries)[0])
    return RatioReport(
        matrix=matrix,
        d=instance.d,
        vector_value=solution.value,
        sign_value=sign_value,
        ratio=solution.value / sign_value,
        vector_solution=solution,
        x_signs=xs,
        y_signs=ys,
        svd_upper=matrix.n * instance.d * sigma1,
    )


def sample_matrix(n, seed, trial, distribution="uniform"):
    """Trial matrix drawn from Philox keyed by ``(seed, 1)`` at counter ``(0, 0, 0, trial)``."""
    bitgen = np.random.Philox(counter=[0, 0, 0, trial], key=[seed, 1])
    rng = np.random.Generator(bitgen)
    if distribution == "uniform":
        return rng.uniform(-1.0, 1.0, size=(n, n))
    if distribution == "gaussian":
        return rng.standard_normal((n, n))
    raise ValueError(f"distribution must be one of {DISTRIBUTIONS}, got {distribution!r}")


def ratio_search(n, d, trials, seed=0, config: SolverConfig = SolverConfig(),
                 distribution="uniform") -> RatioReport:
    """Best ratio over ``trials`` random matrices; ties go to the earliest trial."""
    n = check_positive_int(n, "n")
    trials = check_positive_int(trials, "trials")
    seed = check_seed(seed)
    best = None
    for t in range(trials):
        A = sample_matrix(n, seed, t, distribution)
        if not np.any(A):
            continue
        rep = grothendieck_ratio(A, d, config)
        if best is None or rep.ratio > best.ratio:
            best = RatioReport(**{**rep.__dict__, "trial": t})
    if best is None:
        raise UndefinedRatioError("every sampled matrix was zero")
    return best

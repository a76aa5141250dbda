"""Bilinear optimization over products of unit spheres.

Maximizes ``sum_kj a_kj <x_k, y_j>`` over unit vectors ``x_k, y_j`` in R^d,
checks stationarity and generalized normal equations, evaluates singular-value
bounds and 2 x 2 closed forms, and estimates Grothendieck ratios.
"""

__version__ = "0.1.0"

from .core import (
    Assignment,
    CoefficientMatrix,
    MultiplierPair,
    ProblemInstance,
    SolveReport,
    evaluate,
    extract_multipliers,
)
from .linalg import kron_all_ones, largest_singular_triple, singular_values
from .solver import (
    OracleResult,
    SolverConfig,
    alternating_ascent,
    grid_oracle,
    multistart,
    sign_enumeration,
)
from .normal_eq import (
    BoundReport,
    ResidualReport,
    duality_transfer,
    normal_equation_residual,
    stationarity_residual,
    svd_bound,
)
from .closedform2d import (
    CandidateValue,
    diagonal_bilinear_max,
    quadratic_max,
    symmetric_candidates,
    symmetric_max,
)
from .ratio import RatioReport, grothendieck_ratio, ratio_search
from .estimators import GrothendieckRatioEstimator, SphereBilinearMaximizer

__all__ = [
    "Assignment",
    "BoundReport",
    "CandidateValue",
    "CoefficientMatrix",
    "GrothendieckRatioEstimator",
    "MultiplierPair",
    "OracleResult",
    "ProblemInstance",
    "RatioReport",
    "ResidualReport",
    "SolveReport",
    "SolverConfig",
    "SphereBilinearMaximizer",
    "alternating_ascent",
    "diagonal_bilinear_max",
    "duality_transfer",
    "evaluate",
    "extract_multipliers",
    "grid_oracle",
    "grothendieck_ratio",
    "kron_all_ones",
    "largest_singular_triple",
    "multistart",
    "normal_equation_residual",
    "quadratic_max",
    "ratio_search",
    "sign_enumeration",
    "singular_values",
    "stationarity_residual",
    "svd_bound",
    "symmetric_candidates",
    "symmetric_max",
]

"""scikit-learn style wrappers around the functional API.

``fit`` takes the coefficient matrix ``A`` in the role of ``X``.  Fitted
attributes carry a trailing underscore, and hyper-parameters round-trip through
``get_params``/``set_params`` so the estimators work with ``clone`` and grid
utilities.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_matrix
from .core import CoefficientMatrix, ProblemInstance, evaluate
from .normal_eq import residual_report, svd_bound
from .ratio import grothendieck_ratio
from .solver import SolverConfig, multistart


class _SolverParamsMixin:
    def _config(self):
        return SolverConfig(
            tol=self.tol,
            max_iters=self.max_iters,
            starts=self.starts,
            seed=self.seed,
            residual_tol=self.residual_tol,
        )


class SphereBilinearMaximizer(_SolverParamsMixin, BaseEstimator):
    """Maximize ``sum_kj a_kj <x_k, y_j>`` over unit blocks in R^d.

    Parameters
    ----------
    d : int
        Dimension of every block vector.
    starts, seed, tol, max_iters, residual_tol
        Forwarded to :class:`~spherebilinear.solver.SolverConfig`.

    Attributes
    ----------
    value_ : float
    assignment_ : Assignment
    multipliers_ : MultiplierPair
    report_ : SolveReport
    residuals_ : ResidualReport
    n_iter_ : int
    converged_ : bool
    """

    def __init__(self, d=2, *, starts=64, seed=0, tol=1e-12, max_iters=10000,
                 residual_tol=1e-9):
        self.d = d
        self.starts = starts
        self.seed = seed
        self.tol = tol
        self.max_iters = max_iters
        self.residual_tol = residual_tol

    def fit(self, X, y=None):
        instance = ProblemInstance(CoefficientMatrix(check_matrix(X, name="A")), self.d)
        report = multistart(instance, self._config())
        self.n_features_in_ = instance.n
        self.instance_ = instance
        self.report_ = report
        self.value_ = report.value
        self.assignment_ = report.assignment
        self.multipliers_ = report.multipliers
        self.residuals_ = residual_report(instance, report.assignment, report.multipliers)
        self.n_iter_ = report.iterations
        self.converged_ = report.converged
        return self

    def transform(self, X=None):
        """Return the fitted blocks stacked as ``(2, n, d)``: ``[x, y]``."""
        check_is_fitted(self, "assignment_")
        return np.stack([self.assignment_.x, self.assignment_.y])

    def score(self, X, y=None):
        """Objective of the fitted assignment on matrix ``X``."""
        check_is_fitted(self, "assignment_")
        A = check_matrix(X, name="A")
        return evaluate(ProblemInstance.from_array(A, self.d), self.assignment_)

    def bound(self):
        check_is_fitted(self, "report_")
        return svd_bound(self.instance_, observed=self.value_)


class GrothendieckRatioEstimator(_SolverParamsMixin, BaseEstimator):
    """Ratio of the vector optimum (in R^d) to the ±1 optimum for one matrix."""

    def __init__(self, d=2, *, starts=64, seed=0, tol=1e-12, max_iters=10000,
                 residual_tol=1e-9):
        self.d = d
        self.starts = starts
        self.seed = seed
        self.tol = tol
        self.max_iters = max_iters
        self.residual_tol = residual_tol

    def fit(self, X, y=None):
        A = check_matrix(X, name="A")
        rep = grothendieck_ratio(A, self.d, self._config())
        self.n_features_in_ = A.shape[0]
        self.report_ = rep
        self.ratio_ = rep.ratio
        self.vector_value_ = rep.vector_value
        self.sign_value_ = rep.sign_value
        self.assignment_ = rep.vector_solution.assignment
        self.x_signs_ = rep.x_signs
        self.y_signs_ = rep.y_signs
        return self

    def score(self, X=None, y=None):
        check_is_fitted(self, "ratio_")
        return self.ratio_

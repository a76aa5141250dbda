"""Residuals of the stationarity system and the generalized normal equations.

At a stationary point with multipliers ``lam`` (x side) and ``mu`` (y side)::

    A Y      = diag(lam) X          (x-side Lagrange condition)
    A^T X    = diag(mu) Y           (y-side Lagrange condition)
    (A^T diag(lam)^-1 A - diag(mu)) Y[:, r] = 0
    (A diag(mu)^-1 A^T - diag(lam)) X[:, r] = 0

The first pair needs no inversion and is always available.  The second pair
is only defined when every multiplier is nonzero.
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import linalg
from .core import (
    Assignment,
    MultiplierPair,
    ProblemInstance,
    as_matrix,
    check_compatible,
)
from .exceptions import DimensionError, DualityPreconditionError, SingularMultiplierError

MULTIPLIER_FLOOR = 1e-12
SINGULAR_RTOL = 1e-9
KRON_MAX_ORDER = 32


@dataclass(frozen=True)
class ResidualReport:
    primal_x: Optional[float] = None
    primal_y: Optional[float] = None
    normal_y: Optional[float] = None
    normal_x: Optional[float] = None
    trace_gap: Optional[float] = None

    def as_dict(self):
        return {
            "primal_x": self.primal_x,
            "primal_y": self.primal_y,
            "normal_x": self.normal_x,
            "normal_y": self.normal_y,
            "trace_gap": self.trace_gap,
        }


@dataclass(frozen=True)
class BoundReport:
    sigma1: float
    paper_bound: float
    derived_bound: float
    observed: Optional[float] = None
    kron_sigma1: Optional[float] = None

    def as_dict(self):
        return {
            "sigma1": self.sigma1,
            "paper_bound": self.paper_bound,
            "derived_bound": self.derived_bound,
            "observed": self.observed,
            "kron_sigma1": self.kron_sigma1,
        }


def _check_multipliers(m: MultiplierPair, n):
    if m.lam.size != n:
        raise DimensionError(f"expected {n} multipliers, got {m.lam.size}")


def stationarity_residual(
    instance: ProblemInstance, a: Assignment, m: MultiplierPair
) -> ResidualReport:
    """Max-abs residuals of both Lagrange systems, plus ``|sum lam - sum mu|``."""
    check_compatible(instance, a)
    _check_multipliers(m, instance.n)
    A = instance.A
    rx = A @ a.y - m.lam[:, None] * a.x
    ry = A.T @ a.x - m.mu[:, None] * a.y
    return ResidualReport(
        primal_x=float(np.abs(rx).max()),
        primal_y=float(np.abs(ry).max()),
        trace_gap=m.trace_gap,
    )


def normal_operators(matrix, m: MultiplierPair):
    """``(A^T Lam^-1 A - M, A M^-1 A^T - Lam)`` as dense n x n arrays."""
    A = as_matrix(matrix).entries
    _check_multipliers(m, A.shape[0])
    for name, vals in (("lambda", m.lam), ("mu", m.mu)):
        small = np.flatnonzero(np.abs(vals) <= MULTIPLIER_FLOOR)
        if small.size:
            k = int(small[0])
            raise SingularMultiplierError(
                f"{name}[{k}] = {vals[k]!r} is numerically zero; the normal equations "
                f"need its inverse. Use stationarity_residual instead."
            )
    primal = A.T @ (A / m.lam[:, None]) - np.diag(m.mu)
    dual = A @ (A.T / m.mu[:, None]) - np.diag(m.lam)
    return primal, dual


def normal_equation_residual(matrix, m: MultiplierPair, a: Assignment) -> ResidualReport:
    """Largest Euclidean residual over coordinate slots ``r`` of both normal equations."""
    primal, dual = normal_operators(matrix, m)
    if a.n != primal.shape[0]:
        raise DimensionError(f"assignment has {a.n} blocks, matrix has order {primal.shape[0]}")
    normal_y = np.linalg.norm(primal @ a.y, axis=0).max()
    normal_x = np.linalg.norm(dual @ a.x, axis=0).max()
    return ResidualReport(normal_y=float(normal_y), normal_x=float(normal_x))


def residual_report(instance: ProblemInstance, a: Assignment, m: MultiplierPair) -> ResidualReport:
    """Primal residuals always; normal-equation residuals when every multiplier is nonzero."""
    rep = stationarity_residual(instance, a, m)
    try:
        normal = normal_equation_residual(instance.matrix, m, a)
    except SingularMultiplierError:
        return rep
    return replace(rep, normal_y=normal.normal_y, normal_x=normal.normal_x)


def duality_transfer(matrix, m: MultiplierPair, y, tol=1e-8):
    """Map a null vector of the y-side operator to one of the x-side operator.

    If ``(A^T Lam^-1 A - M) y = 0`` then ``x = Lam^-1 A y`` satisfies
    ``(A M^-1 A^T - Lam) x = A M^-1 (M y) - A y = 0``.  ``x`` is rescaled to
    ``|x| = |y|``.
    """
    A = as_matrix(matrix).entries
    primal, _ = normal_operators(A, m)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if y.size != A.shape[0]:
        raise DimensionError(f"y has {y.size} entries, expected {A.shape[0]}")
    ynorm = float(np.linalg.norm(y))
    if ynorm == 0.0:
        raise DualityPreconditionError("y must be nonzero", residual=0.0)
    residual = float(np.linalg.norm(primal @ y))
    if residual > tol * ynorm:
        raise DualityPreconditionError(
            f"|(A^T Lam^-1 A - M) y| = {residual:.3e} exceeds {tol:g} * |y|",
            residual=residual,
        )
    x = (A @ y) / m.lam
    return x * (ynorm / np.linalg.norm(x))


def is_singular(S, rtol=SINGULAR_RTOL) -> bool:
    """Scale-invariant rank test: smallest singular value <= rtol * largest."""
    s = linalg.singular_values(S)
    return bool(s[-1] <= rtol * s[0])


def svd_bound(instance: ProblemInstance, observed=None, config=None) -> BoundReport:
    """Upper envelopes ``n^2 d sigma_1`` and ``n d sigma_1`` for the optimum.

    ``observed`` defaults to a multistart run under ``config``.  For
    ``n * d <= 32`` the top singular value of ``A ⊗ J_d`` is also computed.
    """
    n, d = instance.n, instance.d
    sigma1 = float(linalg.singular_values(instance.A)[0])
    if observed is None:
        from .solver import SolverConfig, multistart

        observed = multistart(instance, config or SolverConfig()).value
    kron_sigma1 = None
    if n * d <= KRON_MAX_ORDER:
        kron_sigma1 = float(linalg.singular_values(linalg.kron_all_ones(instance.A, d))[0])
    return BoundReport(
        sigma1=sigma1,
        paper_bound=n * n * d * sigma1,
        derived_bound=n * d * sigma1,
        observed=float(observed),
        kron_sigma1=kron_sigma1,
    )

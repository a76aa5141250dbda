"""Problem data, objective evaluation and multiplier extraction.

The objective is the bilinear form

    B(x, y) = sum_{k,j} a_kj <x_k, y_j>

over ``n`` blocks ``x_k`` and ``n`` blocks ``y_j``, each a unit vector in R^d.
Blocks are stored as rows of an ``(n, d)`` array.
"""

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_blocks, check_matrix, check_positive_int
from .exceptions import DimensionError, NotUnitError

UNIT_TOL = 1e-9


def _frozen(arr):
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CoefficientMatrix:
    """Dense real n x n coefficient matrix ``A = (a_kj)``."""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", check_matrix(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def T(self) -> "CoefficientMatrix":
        return CoefficientMatrix(self.entries.T)

    def tolist(self):
        return self.entries.tolist()

    def __eq__(self, other):
        if not isinstance(other, CoefficientMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"CoefficientMatrix(n={self.n}, entries={self.entries.tolist()!r})"


def as_matrix(A) -> CoefficientMatrix:
    return A if isinstance(A, CoefficientMatrix) else CoefficientMatrix(A)


@dataclass(frozen=True)
class ProblemInstance:
    matrix: CoefficientMatrix
    d: int

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))
        object.__setattr__(self, "d", check_positive_int(self.d, "d"))

    @classmethod
    def from_array(cls, A, d):
        return cls(CoefficientMatrix(A), d)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def A(self) -> np.ndarray:
        return self.matrix.entries


def _normalize_blocks(arr, name, tol):
    norms = np.linalg.norm(arr, axis=1)
    dev = np.abs(norms - 1.0)
    bad = np.flatnonzero(dev > tol)
    if bad.size:
        k = int(bad[0])
        raise NotUnitError(
            f"{name}[{k}] has norm {norms[k]!r}; |norm - 1| exceeds {tol:g}"
        )
    needs = dev > 0
    if np.any(needs):
        arr = arr.copy()
        arr[needs] /= norms[needs, None]
    return arr


@dataclass(frozen=True, eq=False)
class Assignment:
    """Unit block vectors ``x`` and ``y``, each stored as an ``(n, d)`` array.

    Blocks within ``unit_tol`` of the sphere are renormalized on construction;
    anything further off is rejected with :class:`NotUnitError`.
    """

    x: np.ndarray
    y: np.ndarray
    unit_tol: float = field(default=UNIT_TOL, repr=False)

    def __post_init__(self):
        x = np.array(self.x, dtype=np.float64)
        y = np.array(self.y, dtype=np.float64)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        if y.ndim == 1:
            y = y.reshape(-1, 1)
        if x.ndim != 2 or y.ndim != 2:
            raise DimensionError("x and y must be lists of vectors")
        if x.shape != y.shape:
            raise DimensionError(
                f"x blocks have shape {x.shape} but y blocks have shape {y.shape}"
            )
        x = check_blocks(x, x.shape[0], x.shape[1], "x")
        y = check_blocks(y, y.shape[0], y.shape[1], "y")
        object.__setattr__(self, "x", _frozen(_normalize_blocks(x, "x", self.unit_tol)))
        object.__setattr__(self, "y", _frozen(_normalize_blocks(y, "y", self.unit_tol)))

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def d(self) -> int:
        return self.x.shape[1]

    def swapped(self) -> "Assignment":
        return Assignment(self.y, self.x)

    def tolist(self):
        return {"x": self.x.tolist(), "y": self.y.tolist()}

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)


@dataclass(frozen=True, eq=False)
class MultiplierPair:
    """Diagonal multipliers ``lam`` (for the x-blocks) and ``mu`` (for the y-blocks)."""

    lam: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        lam = np.array(self.lam, dtype=np.float64).reshape(-1)
        mu = np.array(self.mu, dtype=np.float64).reshape(-1)
        if lam.shape != mu.shape:
            raise DimensionError(
                f"lambda has {lam.size} entries but mu has {mu.size}"
            )
        object.__setattr__(self, "lam", _frozen(lam))
        object.__setattr__(self, "mu", _frozen(mu))

    @property
    def trace_gap(self) -> float:
        return abs(float(np.sum(self.lam)) - float(np.sum(self.mu)))

    def tolist(self):
        return {"lambda": self.lam.tolist(), "mu": self.mu.tolist()}

    def __eq__(self, other):
        if not isinstance(other, MultiplierPair):
            return NotImplemented
        return np.array_equal(self.lam, other.lam) and np.array_equal(self.mu, other.mu)


@dataclass(frozen=True)
class SolveReport:
    value: float
    assignment: Assignment
    multipliers: MultiplierPair
    stationarity_residual: float
    iterations: int
    converged: bool
    starts_used: int = 1
    best_start: int = 0


def check_compatible(instance: ProblemInstance, a: Assignment):
    """Raise :class:`DimensionError` naming the first block that does not fit."""
    n, d = instance.n, instance.d
    for name, blocks in (("x", a.x), ("y", a.y)):
        if blocks.shape[0] != n:
            raise DimensionError(
                f"{name} has {blocks.shape[0]} blocks but the matrix has order {n}",
                block=min(blocks.shape[0], n),
            )
        if blocks.shape[1] != d:
            raise DimensionError(
                f"{name}[0] lies in R^{blocks.shape[1]} but the instance has d={d}",
                block=0,
            )


def gram(a: Assignment) -> np.ndarray:
    """``G[k, j] = <x_k, y_j>``."""
    return (a.x[:, None, :] * a.y[None, :, :]).sum(axis=2)


def evaluate(instance: ProblemInstance, a: Assignment) -> float:
    check_compatible(instance, a)
    return float(np.sum(instance.A * gram(a)))


def extract_multipliers(instance: ProblemInstance, a: Assignment) -> MultiplierPair:
    """Multipliers of the Lagrange conditions, defined at any feasible point.

    ``lam[k] = sum_j a_kj <x_k, y_j>`` and ``mu[k] = sum_j a_jk <x_j, y_k>``, so
    both sum to the objective value.
    """
    check_compatible(instance, a)
    terms = instance.A * gram(a)
    return MultiplierPair(terms.sum(axis=1), terms.sum(axis=0))


def embed_signs(x_signs, y_signs, d) -> Assignment:
    """Place ±1 sign vectors on the first axis of R^d."""
    n = len(x_signs)
    x = np.zeros((n, d))
    y = np.zeros((n, d))
    x[:, 0] = x_signs
    y[:, 0] = y_signs
    return Assignment(x, y)

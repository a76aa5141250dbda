import math

import numpy as np
import pytest

from spherebilinear.core import Assignment, MultiplierPair, ProblemInstance, extract_multipliers
from spherebilinear.exceptions import DualityPreconditionError, SingularMultiplierError
from spherebilinear.linalg import svd
from spherebilinear.normal_eq import (
    duality_transfer,
    is_singular,
    normal_equation_residual,
    normal_operators,
    residual_report,
    stationarity_residual,
    svd_bound,
)
from spherebilinear.solver import multistart

from conftest import HADAMARD, SQRT2

E1, E2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])


def inst(A, d=2):
    return ProblemInstance.from_array(A, d)


def test_stationarity_examples():
    r = stationarity_residual(inst(np.eye(2)), Assignment([E1, E2], [E1, E2]), MultiplierPair([1, 1], [1, 1]))
    assert (r.primal_x, r.primal_y, r.trace_gap) == (0.0, 0.0, 0.0)
    assert r.normal_x is None

    r = stationarity_residual(
        inst(np.diag([3.0, -4.0])), Assignment([E1, E1], [E1, E1]), MultiplierPair([3, -4], [3, -4])
    )
    assert (r.primal_x, r.primal_y) == (0.0, 0.0)


def test_perturbed_optimum_is_not_stationary():
    P = inst(HADAMARD)
    opt = multistart(P)
    c, s = math.cos(0.1), math.sin(0.1)
    R = np.array([[c, -s], [s, c]])
    x = opt.assignment.x.copy()
    x[0] = R @ x[0]
    a = Assignment(x, opt.assignment.y)
    r = stationarity_residual(P, a, extract_multipliers(P, a))
    assert max(r.primal_x, r.primal_y) > 1e-3


def test_normal_residual_hadamard():
    P = inst(HADAMARD)
    rep = multistart(P)
    np.testing.assert_allclose(rep.multipliers.lam, [SQRT2, SQRT2], atol=1e-9)
    r = normal_equation_residual(P.matrix, rep.multipliers, rep.assignment)
    assert r.normal_x <= 1e-8 and r.normal_y <= 1e-8


def test_normal_operators_diagonal_exact():
    m = MultiplierPair([3.0, -4.0], [3.0, -4.0])
    primal, dual = normal_operators(np.diag([3.0, -4.0]), m)
    assert np.all(primal == 0.0) and np.all(dual == 0.0)
    r = normal_equation_residual(np.diag([3.0, -4.0]), m, Assignment([E1, E1], [E1, E1]))
    assert r.normal_x == 0.0 and r.normal_y == 0.0


def test_equal_multipliers_at_singular_value(rng):
    A = rng.uniform(-1, 1, (4, 4))
    U, s, V = svd(A)
    m = MultiplierPair(np.full(4, s[0]), np.full(4, s[0]))
    primal, _ = normal_operators(A, m)
    assert np.linalg.norm(primal @ V[:, 0]) <= 1e-8


def test_zero_multiplier_raises():
    with pytest.raises(SingularMultiplierError, match="stationarity_residual"):
        normal_equation_residual(np.eye(2), MultiplierPair([1.0, 0.0], [1.0, 1.0]), Assignment([E1, E2], [E1, E2]))


def test_residual_report_falls_back_to_primal():
    # zero row: lam_2 = 0 at every point
    A = np.array([[1.0, 1.0], [0.0, 0.0]])
    P = inst(A)
    rep = multistart(P)
    r = residual_report(P, rep.assignment, rep.multipliers)
    assert r.normal_x is None and r.normal_y is None
    assert r.primal_x <= 1e-8 and r.primal_y <= 1e-8


@pytest.mark.parametrize(
    "A, lam, y, expected",
    [
        (np.eye(2), [1.0, 1.0], [1.0, 0.0], [1.0, 0.0]),
        (HADAMARD, [SQRT2, SQRT2], [1.0, 0.0], [1 / SQRT2, 1 / SQRT2]),
        (np.diag([3.0, -4.0]), [3.0, -4.0], [0.0, 1.0], [0.0, 1.0]),
    ],
)
def test_duality_transfer_examples(A, lam, y, expected):
    m = MultiplierPair(lam, lam)
    x = duality_transfer(A, m, y)
    np.testing.assert_allclose(x, expected, atol=1e-15)
    _, dual = normal_operators(A, m)
    assert np.linalg.norm(dual @ x) <= 1e-10


def test_duality_transfer_rejects_non_solution():
    with pytest.raises(DualityPreconditionError) as exc:
        duality_transfer(HADAMARD, MultiplierPair([1.0, 1.0], [1.0, 1.0]), [1.0, 0.0])
    assert exc.value.residual > 0.1


def constructed_singular_pair(rng, n):
    """Random A, lam and a vector y, with mu chosen so (A^T Lam^-1 A - M) y = 0."""
    while True:
        A = rng.uniform(-1, 1, (n, n))
        lam = rng.choice([-1, 1], n) * rng.uniform(0.5, 2.0, n)
        y = rng.choice([-1, 1], n) * rng.uniform(0.3, 1.0, n)
        mu = (A.T @ (A @ y / lam)) / y
        if np.all(np.abs(mu) > 0.05) and np.all(np.abs(mu) < 50):
            return A, MultiplierPair(lam, mu), y


def test_duality_equivalence_small_sample(rng):
    for _ in range(20):
        n = int(rng.integers(2, 6))
        A, m, y = constructed_singular_pair(rng, n)
        primal, dual = normal_operators(A, m)
        assert is_singular(primal) and is_singular(dual)
        x = duality_transfer(A, m, y)
        assert np.linalg.norm(dual @ x) <= 1e-7 * np.linalg.norm(x)

        lam = rng.choice([-1, 1], n) * rng.uniform(0.5, 2.0, n)
        mu = rng.choice([-1, 1], n) * rng.uniform(0.5, 2.0, n)
        primal, dual = normal_operators(A, MultiplierPair(lam, mu))
        assert not is_singular(primal) and not is_singular(dual)


@pytest.mark.parametrize(
    "A, sigma1, observed",
    [(np.eye(2), 1.0, 2.0), (HADAMARD, SQRT2, 2 * SQRT2), ([[0.0, 1.0], [1.0, 0.0]], 1.0, 2.0)],
)
def test_svd_bound_examples(A, sigma1, observed):
    b = svd_bound(inst(A))
    assert b.sigma1 == pytest.approx(sigma1, abs=1e-14)
    assert b.paper_bound == pytest.approx(8 * sigma1)
    assert b.derived_bound == pytest.approx(4 * sigma1)
    assert b.observed == pytest.approx(observed, abs=1e-9)
    assert b.observed <= b.derived_bound + 1e-9 <= b.paper_bound + 1e-9
    assert b.kron_sigma1 == pytest.approx(2 * sigma1, rel=1e-12)


def test_svd_bound_zero_and_large():
    b = svd_bound(inst(np.zeros((2, 2))))
    assert (b.sigma1, b.paper_bound, b.derived_bound, b.observed) == (0.0, 0.0, 0.0, 0.0)
    b = svd_bound(inst(np.eye(9), 4), observed=9.0)
    assert b.kron_sigma1 is None


def test_bound_dominance(rng):
    for _ in range(60):
        n = int(rng.integers(1, 7))
        d = int(rng.integers(1, 4))
        b = svd_bound(inst(rng.uniform(-1, 1, (n, n)), d))
        assert b.observed <= b.derived_bound + 1e-9
        assert b.derived_bound <= b.paper_bound + 1e-9

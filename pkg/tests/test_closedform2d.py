import math

import numpy as np
import pytest

from spherebilinear.closedform2d import (
    diagonal_bilinear_max,
    quadratic_max,
    symmetric_candidates,
    symmetric_max,
)
from spherebilinear.core import ProblemInstance
from spherebilinear.exceptions import DimensionError, NotSymmetricError
from spherebilinear.solver import grid_oracle, multistart

from conftest import HADAMARD, SQRT2, brute_angle_max


def quad_oracle(A, m=20000):
    # q(theta) = a11 + a22 + 2 a12 cos(theta) with theta the angle between x_1 and x_2
    t = 2 * np.pi * np.arange(m) / m
    return float((A[0][0] + A[1][1] + 2 * A[0][1] * np.cos(t)).max())


@pytest.mark.parametrize(
    "A, expected",
    [([[1.0, 2.0], [2.0, 1.0]], 6.0), (np.eye(2), 2.0), ([[0.0, -3.0], [-3.0, 0.0]], 6.0)],
)
def test_quadratic_max(A, expected):
    assert quad_oracle(A) == pytest.approx(expected, abs=1e-9)
    assert quadratic_max(A) == expected


def test_quadratic_rejects_asymmetric_and_wrong_size():
    with pytest.raises(NotSymmetricError):
        quadratic_max([[1.0, 2.0], [3.0, 1.0]])
    with pytest.raises(DimensionError):
        quadratic_max(np.eye(3))


@pytest.mark.parametrize("a11, a22, expected", [(3, -4, 7), (0, 5, 5), (2, 2, 4)])
def test_diagonal_bilinear_max(a11, a22, expected):
    assert diagonal_bilinear_max(a11, a22) == expected
    assert brute_angle_max(np.diag([a11, a22]), m=60) == pytest.approx(expected, abs=1e-12)


def by_branch(cands, branch):
    return [c for c in cands if c.branch == branch]


def test_candidates_hadamard():
    cands = symmetric_candidates(HADAMARD)
    full = [c.value for c in by_branch(cands, "full_rank") if c.valid]
    assert max(full) == pytest.approx(2 * SQRT2, abs=1e-15)
    prop = [c.value for c in by_branch(cands, "proportional")]
    assert max(prop) == 2.0
    assert not by_branch(cands, "diagonal")[0].valid


def test_candidates_diagonal_case():
    cands = symmetric_candidates(np.diag([3.0, -4.0]))
    diag = by_branch(cands, "diagonal")[0]
    assert diag.valid and diag.value == 7.0
    full = by_branch(cands, "full_rank")
    assert not any(c.valid for c in full)
    assert max(c.value for c in full) == pytest.approx(7.0)


def test_candidates_zero_diagonal():
    cands = symmetric_candidates([[0.0, 1.0], [1.0, 0.0]])
    z = by_branch(cands, "zero_diagonal")[0]
    assert z.valid and z.value == 2.0
    assert max(c.value for c in by_branch(cands, "proportional")) == 2.0


@pytest.mark.parametrize(
    "A, value, branch",
    [
        (HADAMARD, 2 * SQRT2, "full_rank"),
        (np.diag([3.0, -4.0]), 7.0, "diagonal"),
        (np.ones((2, 2)), 4.0, "proportional"),
    ],
)
def test_symmetric_max_examples(A, value, branch):
    assert brute_angle_max(A, m=120) == pytest.approx(value, abs=1e-12)
    v, b = symmetric_max(A)
    assert v == pytest.approx(value, abs=1e-15)
    assert b == branch


def test_symmetric_max_dominates_valid_candidates(rng):
    for _ in range(100):
        a, b, c = rng.uniform(-1, 1, 3)
        A = [[a, b], [b, c]]
        v, _ = symmetric_max(A)
        assert all(v >= cand.value for cand in symmetric_candidates(A) if cand.valid)


def test_positive_homogeneity(rng):
    for _ in range(100):
        a, b, c = rng.uniform(-1, 1, 3)
        s = float(rng.uniform(0.1, 10))
        A = np.array([[a, b], [b, c]])
        assert abs(symmetric_max(s * A)[0] - s * symmetric_max(A)[0]) <= 1e-12 * max(1.0, s)


def test_combined_expression_agrees():
    for A in ([[1.0, 1.0], [1.0, -1.0]], [[2.0, 1.0], [1.0, -0.5]], [[-1.0, 0.5], [0.5, 3.0]]):
        for c in symmetric_candidates(A):
            assert "disagrees" not in c.note


def test_full_rank_needs_realizable_blocks():
    # solves A Lam^-1 A = Lam but no unit blocks reach it: the true max is lower
    A = [[-0.028, 0.779], [0.779, 0.868]]
    full = by_branch(symmetric_candidates(A), "full_rank")
    assert all(not c.valid for c in full)
    assert any("realize" in c.note for c in full)
    v, _ = symmetric_max(A)
    assert v == pytest.approx(multistart(ProblemInstance.from_array(A, 2)).value, abs=1e-9)


def family(rng, kind):
    s = float(rng.uniform(0.1, 5.0))
    if kind == "diagonal":
        a, c = rng.uniform(-1, 1, 2)
        return np.array([[a, 0.0], [0.0, c]])
    if kind == "zero_diagonal":
        return np.array([[0.0, s], [s, 0.0]]) * rng.choice([-1, 1])
    return s * HADAMARD


@pytest.mark.parametrize("kind", ["diagonal", "zero_diagonal", "hadamard"])
def test_agrees_with_solver_on_families(rng, kind):
    for _ in range(15):
        A = family(rng, kind)
        P = ProblemInstance.from_array(A, 2)
        v, _ = symmetric_max(A)
        assert abs(v - multistart(P).value) <= 1e-7
        orc = grid_oracle(P, 0.01)
        assert orc.value - 1e-12 <= v <= orc.value + orc.error_bound


def test_agrees_with_solver_on_random_symmetric(rng):
    for _ in range(200):
        a, b, c = rng.uniform(-1, 1, 3)
        A = np.array([[a, b], [b, c]])
        assert abs(symmetric_max(A)[0] - multistart(ProblemInstance.from_array(A, 2)).value) <= 1e-7


def test_asymmetric_rejected():
    with pytest.raises(NotSymmetricError):
        symmetric_candidates([[1.0, 2.0], [0.0, 1.0]])
    assert math.isclose(symmetric_max([[0.0, 0.0], [0.0, 0.0]])[0], 0.0)

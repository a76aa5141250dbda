import itertools
import math

import numpy as np
import pytest

SQRT2 = math.sqrt(2.0)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]])


def brute_sign_max(A):
    """Max of x^T A y over all 4^n sign pairs, by full enumeration."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    best = -np.inf
    for xs in itertools.product((1, -1), repeat=n):
        for ys in itertools.product((1, -1), repeat=n):
            best = max(best, float(np.array(xs) @ A @ np.array(ys)))
    return best


def brute_angle_max(A, m=360):
    """Max of sum a_kj <x_k, y_j> for a 2x2 matrix with all four blocks in R^2.

    Fixes the angle of x_1 at 0 (joint rotation) and scans the other three
    angles on an m-point grid; no inner maximization.
    """
    A = np.asarray(A, dtype=float)
    t = 2 * np.pi * np.arange(m) / m
    a, b, c = np.meshgrid(t, t, t, indexing="ij")  # x_2, y_1, y_2
    val = (
        A[0, 0] * np.cos(b)
        + A[0, 1] * np.cos(c)
        + A[1, 0] * np.cos(a - b)
        + A[1, 1] * np.cos(a - c)
    )
    return float(val.max())


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def unit_rows(rng, n, d):
    g = rng.standard_normal((n, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def random_orthogonal(rng, d):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

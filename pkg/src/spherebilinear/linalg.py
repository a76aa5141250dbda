"""Small dense linear algebra built on Jacobi rotations.

Matrices here are tiny (order at most a few dozen), so the Jacobi methods are
used for their accuracy and predictability: the one-sided (Hestenes) variant
orthogonalizes the columns of ``A`` directly and therefore resolves small
singular values to absolute accuracy ~eps * sigma_1, which squaring into
``A^T A`` would not.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix, check_positive_int
from .exceptions import ConvergenceError

MAX_SWEEPS = 100
OFF_TOL = 1e-14
RANK_RTOL = 1e-12

_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class SingularTriple:
    sigma: float
    left: np.ndarray
    right: np.ndarray
    degenerate: bool = False


def _off_norm(G):
    off = G - np.diag(np.diag(G))
    return float(np.linalg.norm(off))


def _one_sided_jacobi(A):
    """Return ``(W, V)`` with ``A @ V = W`` and the columns of ``W`` orthogonal."""
    W = np.array(A, dtype=np.float64, copy=True)
    n = W.shape[1]
    V = np.eye(n)
    for _ in range(MAX_SWEEPS):
        G = W.T @ W
        scale = np.linalg.norm(G)
        if scale == 0.0 or _off_norm(G) <= OFF_TOL * scale:
            return W, V
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                wp, wq = W[:, p], W[:, q]
                alpha = wp @ wp
                beta = wq @ wq
                gamma = wp @ wq
                if gamma == 0.0 or abs(gamma) <= _EPS * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                W[:, [p, q]] = np.column_stack((c * wp - s * wq, s * wp + c * wq))
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
        if not rotated:
            return W, V
    raise ConvergenceError(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")


def svd(A):
    """Thin SVD ``A = U diag(s) V^T`` with ``s`` descending.

    Left vectors belonging to zero singular values are returned as zero columns.
    """
    A = check_matrix(A, square=False)
    m, n = A.shape
    if m < n:
        U, s, V = svd(A.T)
        return V, s, U
    W, V = _one_sided_jacobi(A)
    s = np.linalg.norm(W, axis=0)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    W = W[:, order]
    V = V[:, order]
    U = np.zeros_like(W)
    nz = s > 0
    U[:, nz] = W[:, nz] / s[nz]
    return U, s, V


def singular_values(A, *, rank_sensitive=False):
    """Singular values of ``A`` in descending order.

    With ``rank_sensitive=True`` values below ``1e-12 * sigma_1`` are reported
    as exactly zero.
    """
    s = svd(A)[1]
    if rank_sensitive and s.size and s[0] > 0:
        s = np.where(s < RANK_RTOL * s[0], 0.0, s)
    return s


def largest_singular_triple(A) -> SingularTriple:
    U, s, V = svd(A)
    m, n = U.shape[0], V.shape[0]
    if s[0] == 0.0:
        return SingularTriple(0.0, np.eye(m)[:, 0], np.eye(n)[:, 0], degenerate=True)
    return SingularTriple(float(s[0]), U[:, 0].copy(), V[:, 0].copy())


def symmetric_eig(S):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(w, Q)`` with eigenvalues ``w`` descending and ``S @ Q = Q diag(w)``.
    """
    S = check_matrix(S)
    if not np.allclose(S, S.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(S).max())):
        raise ValueError("matrix is not symmetric")
    M = 0.5 * (S + S.T)
    n = M.shape[0]
    Q = np.eye(n)
    scale = np.linalg.norm(M)
    for _ in range(MAX_SWEEPS):
        if scale == 0.0 or _off_norm(M) <= OFF_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(M[p, q]) <= _EPS * 1e-3 * scale:
                    continue
                theta = (M[q, q] - M[p, p]) / (2.0 * M[p, q])
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                M = J.T @ M @ J
                Q = Q @ J
    else:
        raise ConvergenceError(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")
    w = np.diag(M).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], Q[:, order]


def kron_all_ones(A, d):
    """``A ⊗ J_d`` where ``J_d`` is the d x d all-ones matrix.

    Entry ``[k*d + r, j*d + s]`` equals ``a_kj`` (0-based, coordinates of each
    block laid out contiguously).
    """
    A = check_matrix(A, square=False)
    d = check_positive_int(d, "d")
    return np.kron(A, np.ones((d, d)))

"""Input validation helpers shared by the functional API and the estimators."""

import numbers

import numpy as np

from .exceptions import DimensionError


def check_matrix(A, *, square=True, name="matrix"):
    """Return ``A`` as a read-only float64 2-D array.

    Rejects NaN/Inf, non-2-D input and (when ``square``) non-square input.
    """
    arr = np.array(A, dtype=np.float64, copy=True)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError(f"{name} must be non-empty")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    arr.setflags(write=False)
    return arr


def check_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return int(value)


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, numbers.Integral):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return int(seed)


def check_blocks(blocks, n, d, name):
    """Validate an (n, d) stack of block vectors, naming the first bad block."""
    arr = np.array(blocks, dtype=np.float64, copy=True)
    if arr.ndim == 1 and d == 1 and arr.shape[0] == n:
        arr = arr.reshape(n, 1)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be a list of {n} vectors in R^{d}")
    if arr.shape[0] != n:
        raise DimensionError(
            f"{name} has {arr.shape[0]} blocks, expected {n}",
            block=min(arr.shape[0], n),
        )
    if arr.shape[1] != d:
        raise DimensionError(
            f"{name}[0] has dimension {arr.shape[1]}, expected {d}", block=0
        )
    bad = np.flatnonzero(~np.all(np.isfinite(arr), axis=1))
    if bad.size:
        raise ValueError(f"{name}[{bad[0]}] contains NaN or Inf")
    return arr

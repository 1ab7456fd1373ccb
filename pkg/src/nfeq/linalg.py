"""Dense linear-algebra kernel for the collocation system.

Row-pivoted LU (LAPACK dgetrf/dgetrs) plus an explicit-inverse condition
estimate. Dense storage is deliberate: collocation rows have few nonzeros
but their column positions depend on the delay coefficients and are
unstructured, and desk-scale N keeps O(N^3) tractable.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.linalg import lapack

#: pivots below this magnitude are treated as exact zeros
PIVOT_FLOOR = 1e-300
#: condition_estimate refuses larger systems (cost guard)
MAX_CONDITION_DIM = 4097


class SingularMatrixError(ArithmeticError):
    """Elimination hit a (numerically) zero pivot.

    ``step`` is the 1-based elimination step at which the pivot vanished.
    """

    def __init__(self, step: int) -> None:
        self.step = step
        super().__init__(f"zero pivot at elimination step {step}")


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _factor(a: np.ndarray):
    lu, piv, info = lapack.dgetrf(a)
    if info < 0:
        raise ValueError(f"illegal argument {-info} to dgetrf")
    if info > 0:
        raise SingularMatrixError(int(info))
    diag = np.abs(np.diag(lu))
    if diag.min() < PIVOT_FLOOR:
        raise SingularMatrixError(int(diag.argmin()) + 1)
    return lu, piv


def solve(a, rhs) -> np.ndarray:
    """Solve a*x = rhs by row-pivoted elimination."""
    a = _as_square(a)
    b = np.asarray(rhs, dtype=float)
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix "
                         f"dimension {a.shape[0]}")
    lu, piv = _factor(a)
    x, info = lapack.dgetrs(lu, piv, b)
    if info != 0:
        raise ValueError(f"illegal argument {-info} to dgetrs")
    return x


def condition_estimate(a) -> float:
    """Infinity-norm condition number via column solves against unit vectors.

    Returns +inf for singular matrices. O(n^3).
    """
    a = _as_square(a)
    n = a.shape[0]
    if n > MAX_CONDITION_DIM:
        raise ValueError(f"dimension {n} exceeds cap {MAX_CONDITION_DIM}")
    norm_a = float(np.abs(a).sum(axis=1).max())
    try:
        lu, piv = _factor(a)
    except SingularMatrixError:
        return math.inf
    inv, info = lapack.dgetrs(lu, piv, np.eye(n))
    if info != 0:
        raise ValueError(f"illegal argument {-info} to dgetrs")
    norm_inv = float(np.abs(inv).sum(axis=1).max())
    return norm_a * norm_inv

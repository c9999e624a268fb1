"""Dense phase-1 simplex for small feasibility problems ``A x = b, x >= 0``."""

from __future__ import annotations

import numpy as np


def phase_one(A, b, tol: float = 1e-9, max_iter: int = 10_000):
    """Decide feasibility of ``A x = b, x >= 0``.

    Minimizes the sum of one artificial variable per row, pivoting with
    Bland's rule so the method cannot cycle. Returns ``(feasible, x)``
    where ``x`` is a basic feasible point when ``feasible`` is true and
    ``None`` otherwise. Feasibility means the optimal artificial sum is at
    most ``tol``.
    """
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, k = A.shape
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # columns: k structural, m artificial, then rhs
    T = np.zeros((m + 1, k + m + 1))
    T[:m, :k] = A
    T[:m, k : k + m] = np.eye(m)
    T[:m, -1] = b
    # reduced costs of the artificial objective
    T[m, :k] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = list(range(k, k + m))

    for _ in range(max_iter):
        cost = T[m, : k + m]
        entering = -1
        for j in range(k + m):
            if cost[j] < -tol:
                entering = j
                break
        if entering < 0:
            break
        col = T[:m, entering]
        rhs = T[:m, -1]
        leaving = -1
        best = np.inf
        for r in range(m):
            if col[r] > tol:
                ratio = rhs[r] / col[r]
                if ratio < best - tol or (
                    ratio <= best + tol and leaving >= 0 and basis[r] < basis[leaving]
                ):
                    best = ratio
                    leaving = r
        if leaving < 0:
            # unbounded direction cannot occur for a bounded-below objective
            break
        T[leaving] /= T[leaving, entering]
        for r in range(m + 1):
            if r != leaving and T[r, entering] != 0.0:
                T[r] -= T[r, entering] * T[leaving]
        basis[leaving] = entering
    else:
        raise RuntimeError("phase-1 simplex did not terminate")

    infeasibility = -T[m, -1]
    if infeasibility > tol:
        return False, None
    x = np.zeros(k)
    for r, var in enumerate(basis):
        if var < k:
            x[var] = T[r, -1]
    return True, x

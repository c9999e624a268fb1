"""Convex-position and hull-vertex predicates in R^d.

Two scalar kinds are supported and never mixed within one call: binary
floating point (numpy ``float64``) and exact rationals (``int`` or
``Fraction`` coordinates). Point indices are 0-based throughout.

A set of ``d + 2`` points spans a ``(d+1) x (d+2)`` homogeneous matrix whose
columns are ``(p_i, 1)``. Its null vector ``lam`` (the affine dependence)
splits the indices into the two Radon classes by sign. In general position
either both classes have at least two members (every point is a vertex) or
one class is a singleton ``{i}`` and ``p_i`` lies inside the simplex of the
others.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Sequence

import numpy as np

from .simplex import phase_one

SIGN_TOL = 1e-9
LP_TOL = 1e-9
_RANK_TOL = 1e-12


class Outcome(enum.Enum):
    CONVEX = "convex"
    NOT_CONVEX = "not_convex"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ConvexPositionOutcome:
    kind: Outcome
    inner_index: int | None = None

    def __post_init__(self):
        if (self.kind is Outcome.NOT_CONVEX) != (self.inner_index is not None):
            raise ValueError("inner_index is set exactly for NOT_CONVEX outcomes")


@dataclass(frozen=True)
class RadonResult:
    coefficients: tuple
    positive: frozenset[int]
    negative: frozenset[int]
    degenerate: bool
    min_rel_coeff: float | None = None

    def outcome(self) -> ConvexPositionOutcome:
        if self.degenerate:
            return ConvexPositionOutcome(Outcome.DEGENERATE)
        if len(self.positive) == 1:
            return ConvexPositionOutcome(Outcome.NOT_CONVEX, next(iter(self.positive)))
        if len(self.negative) == 1:
            return ConvexPositionOutcome(Outcome.NOT_CONVEX, next(iter(self.negative)))
        return ConvexPositionOutcome(Outcome.CONVEX)


def _float_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise ValueError(f"expected a (count, d) array of points, got shape {arr.shape}")
    return arr


def _exact_points(points) -> list[list[Fraction]]:
    rows = [list(p) for p in points]
    if not rows:
        raise ValueError("expected at least one point")
    d = len(rows[0])
    out = []
    for p in rows:
        if len(p) != d:
            raise ValueError("points have mixed dimensions")
        for c in p:
            if isinstance(c, (bool, float, np.floating)) or not isinstance(c, (Rational, np.integer)):
                raise TypeError(f"exact predicates need int or Fraction coordinates, got {type(c).__name__}")
        out.append([Fraction(int(c)) if isinstance(c, np.integer) else Fraction(c) for c in p])
    return out


def _check_radon_count(count: int, d: int) -> None:
    if count != d + 2:
        raise ValueError(f"need exactly d+2 = {d + 2} points in dimension {d}, got {count}")


def _null_vector(M: np.ndarray) -> np.ndarray | None:
    """Null vector of a wide matrix by elimination with partial pivoting.

    Returns None unless the null space is exactly one-dimensional.
    """
    U = M.copy()
    rows, cols = U.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(U[r:, c])))
        if abs(U[p, c]) <= _RANK_TOL:
            continue
        if p != r:
            U[[r, p]] = U[[p, r]]
        U[r + 1 :] -= np.outer(U[r + 1 :, c] / U[r, c], U[r])
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    if len(free) != 1:
        return None
    lam = np.zeros(cols)
    lam[free[0]] = 1.0
    for row in range(len(pivots) - 1, -1, -1):
        c = pivots[row]
        lam[c] = -(U[row, c + 1 :] @ lam[c + 1 :]) / U[row, c]
    return lam


def affine_dependence(points) -> RadonResult:
    """Float-path affine dependence of ``d + 2`` points.

    ``lam`` is scaled to ``max |lam_i| = 1`` with its first nonzero entry
    positive. The result is degenerate when the null space is not
    one-dimensional or some ``|lam_i|`` falls below ``SIGN_TOL`` relative to
    the largest.
    """
    P = _float_points(points)
    count, d = P.shape
    _check_radon_count(count, d)
    M = np.vstack([P.T, np.ones(count)])
    # row scaling leaves the null space unchanged
    scale = np.abs(M).max(axis=1)
    scale[scale == 0] = 1.0
    lam = _null_vector(M / scale[:, None])
    if lam is None or not np.all(np.isfinite(lam)):
        zero = tuple(0.0 for _ in range(count))
        return RadonResult(zero, frozenset(), frozenset(), True, 0.0)
    lam /= np.abs(lam).max()
    first = lam[np.flatnonzero(lam)[0]]
    if first < 0:
        lam = -lam
    rel = np.abs(lam)
    min_rel = float(rel.min())
    degenerate = min_rel < SIGN_TOL
    pos = frozenset(int(i) for i in np.flatnonzero(lam > 0))
    neg = frozenset(int(i) for i in np.flatnonzero(lam < 0))
    return RadonResult(tuple(float(x) for x in lam), pos, neg, degenerate, min_rel)


def _bareiss_det(M: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    A = [row[:] for row in M]
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i = A[i]
            row_k = A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def _integer_columns(P: list[list[Fraction]]) -> list[list[int]]:
    """Homogeneous matrix with each column ``(p_i, 1)`` scaled to integers.

    Positive column scaling preserves the sign pattern of the null vector.
    """
    cols = []
    for p in P:
        den = 1
        for c in p:
            den = den * c.denominator // gcd(den, c.denominator)
        cols.append([int(c * den) for c in p] + [den])
    return [list(row) for row in zip(*cols)]


def affine_dependence_exact(points) -> RadonResult:
    """Exact affine dependence; ``lam`` is primitive with first nonzero entry positive."""
    P = _exact_points(points)
    count, d = len(P), len(P[0])
    _check_radon_count(count, d)
    M = _integer_columns(P)
    lam = []
    for i in range(count):
        minor = [row[:i] + row[i + 1 :] for row in M]
        det = _bareiss_det(minor)
        lam.append(-det if i % 2 else det)
    if all(x == 0 for x in lam):
        return RadonResult(tuple(lam), frozenset(), frozenset(), True)
    # undo the column scaling exactly, then reduce to a primitive vector
    dens = [M[-1][i] for i in range(count)]
    frac = [Fraction(lam[i]) * dens[i] for i in range(count)]
    common = 1
    for f in frac:
        common = common * f.denominator // gcd(common, f.denominator)
    ints = [int(f * common) for f in frac]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    degenerate = any(x == 0 for x in ints)
    pos = frozenset(i for i, x in enumerate(ints) if x > 0)
    neg = frozenset(i for i, x in enumerate(ints) if x < 0)
    return RadonResult(tuple(ints), pos, neg, degenerate)


def is_convex_position(points) -> ConvexPositionOutcome:
    return affine_dependence(points).outcome()


def is_convex_position_exact(points) -> ConvexPositionOutcome:
    return affine_dependence_exact(points).outcome()


# outcome codes of the batched classifier
CONVEX, NOT_CONVEX, DEGENERATE = 0, 1, 2


def classify_batch(P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Classify many configurations of ``d + 2`` points at once.

    ``P`` has shape ``(N, d+2, d)``. The affine dependence is taken as the
    signed maximal minors of each homogeneous matrix, which is the null
    vector whenever it is nonzero. Returns ``(codes, inner)`` where codes are
    ``CONVEX``, ``NOT_CONVEX`` or ``DEGENERATE`` and ``inner`` holds the
    interior index for ``NOT_CONVEX`` rows and -1 elsewhere.
    """
    P = np.asarray(P, dtype=float)
    N, k, d = P.shape
    _check_radon_count(k, d)
    M = np.empty((N, d + 1, k))
    M[:, :d, :] = np.transpose(P, (0, 2, 1))
    M[:, d, :] = 1.0
    scale = np.abs(M).max(axis=2, keepdims=True)
    scale[scale == 0] = 1.0
    M /= scale
    lam = np.empty((N, k))
    cols = np.arange(k)
    for i in range(k):
        det = np.linalg.det(M[:, :, cols != i])
        lam[:, i] = -det if i % 2 else det
    mag = np.abs(lam)
    top = mag.max(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = mag.min(axis=1) / top
    degenerate = ~np.isfinite(rel) | (rel < SIGN_TOL) | (top == 0)
    positive = lam > 0
    n_pos = positive.sum(axis=1)
    n_neg = k - n_pos
    inner = np.full(N, -1, dtype=np.int64)
    one_pos = (n_pos == 1) & ~degenerate
    one_neg = (n_neg == 1) & ~degenerate & ~one_pos
    inner[one_pos] = np.argmax(positive[one_pos], axis=1)
    inner[one_neg] = np.argmax(~positive[one_neg], axis=1)
    codes = np.full(N, CONVEX, dtype=np.int8)
    codes[one_pos | one_neg] = NOT_CONVEX
    codes[degenerate] = DEGENERATE
    return codes, inner


def is_hull_vertex(i: int, points) -> bool:
    """True iff point ``i`` is not a convex combination of the other points.

    Exact duplicates of ``p_i`` are ignored so that a repeated vertex still
    reports as a vertex.
    """
    P = _float_points(points)
    count = P.shape[0]
    if not 0 <= i < count:
        raise IndexError(f"point index {i} out of range for {count} points")
    target = P[i]
    others = np.array([p for j, p in enumerate(P) if j != i and not np.array_equal(p, target)])
    if len(others) == 0:
        return True
    shifted = others - target
    scale = np.abs(shifted).max()
    if scale == 0:
        return True
    A = np.vstack([(shifted / scale).T, np.ones(len(others))])
    b = np.zeros(A.shape[0])
    b[-1] = 1.0
    feasible, _ = phase_one(A, b, tol=LP_TOL)
    return not feasible


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def monotone_chain(points) -> list[tuple[float, float]]:
    """Strict convex hull vertices in counter-clockwise order (collinear points dropped)."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def count_hull_vertices(points, method: str = "auto") -> int:
    """Number of vertices (0-faces) of the convex hull.

    ``method`` is ``"auto"`` (monotone chain in the plane, LP otherwise),
    ``"chain"`` or ``"lp"``. Repeated points count once.
    """
    P = _float_points(points)
    d = P.shape[1]
    if method == "auto":
        method = "chain" if d == 2 else "lp"
    if method == "chain":
        if d != 2:
            raise ValueError("monotone chain needs planar points")
        return len(monotone_chain(P.tolist()))
    if method != "lp":
        raise ValueError(f"unknown method {method!r}")
    U = np.unique(P, axis=0)
    if len(U) <= 2:
        return len(U)
    # a strict coordinate-wise extreme is always a vertex; skip its LP
    known = np.zeros(len(U), dtype=bool)
    for axis in range(d):
        col = U[:, axis]
        for j in (int(np.argmin(col)), int(np.argmax(col))):
            if np.count_nonzero(col == col[j]) == 1:
                known[j] = True
    return int(known.sum()) + sum(is_hull_vertex(j, U) for j in np.flatnonzero(~known))


def _exact_rank(rows: list[list[Fraction]]) -> int:
    A = [r[:] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c] != 0:
                f = A[r][c] / A[rank][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def general_position_check(points: Sequence, tol: float = 1e-10) -> bool:
    """True iff every ``d + 1`` of the points are affinely independent.

    Exact inputs (``int``/``Fraction``) are decided by exact rank; floats by
    the smallest singular value of each homogeneous ``(d+1) x (d+1)``
    matrix exceeding ``tol``. Meant for small sets; the cost is binomial.
    """
    try:
        exact = _exact_points(points)
    except TypeError:
        exact = None
    if exact is not None:
        d = len(exact[0])
        size = min(d + 1, len(exact))
        for subset in itertools.combinations(exact, size):
            rows = [list(p) + [Fraction(1)] for p in subset]
            if _exact_rank(rows) < size:
                return False
        return True
    P = _float_points(points)
    count, d = P.shape
    size = min(d + 1, count)
    for subset in itertools.combinations(range(count), size):
        H = np.hstack([P[list(subset)], np.ones((size, 1))])
        if np.linalg.svd(H, compute_uv=False)[-1] <= tol:
            return False
    return True

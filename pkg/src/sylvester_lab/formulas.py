"""Closed forms for the probabilities and expectations under test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .stirling import alternating_tail_sum


@dataclass(frozen=True)
class TheoryValue:
    approx: float
    description: str
    exact: Fraction | None = None

    @classmethod
    def from_exact(cls, exact: Fraction, description: str) -> "TheoryValue":
        return cls(float(exact), description, exact)


def _require_dim(d: int) -> None:
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")


def convex_position_probability(d: int) -> TheoryValue:
    """Probability that ``d + 2`` walk (or bridge) points are in convex position: ``1 - 2/(d+1)!``."""
    _require_dim(d)
    return TheoryValue.from_exact(
        1 - Fraction(2, math.factorial(d + 1)), f"P(convex position), walk/bridge, d={d}"
    )


def expected_vertices_walk(n: int, d: int) -> TheoryValue:
    """Mean vertex count of the hull of ``S_0, ..., S_n`` in R^d."""
    if n < 1:
        raise ValueError(f"walk length must be >= 1, got {n}")
    _require_dim(d)
    exact = Fraction(2 * alternating_tail_sum(n + 1, d), math.factorial(n))
    return TheoryValue.from_exact(exact, f"E[f0] of walk hull, n={n}, d={d}")


def bridge_vertex_probability(d: int) -> TheoryValue:
    """Probability that a given step of a length-``(d+2)`` bridge is a hull vertex."""
    _require_dim(d)
    exact = Fraction(2 * alternating_tail_sum(d + 2, d), math.factorial(d + 2))
    return TheoryValue.from_exact(exact, f"P(B_i is a vertex), bridge, d={d}")


def _log_binomial(n: float, k: float) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def kingman_ball_probability(d: int) -> TheoryValue:
    """Kingman's convex-position probability for ``d + 2`` uniform points in a d-ball.

    Half-integer binomials are evaluated through log-Gamma.
    """
    _require_dim(d)
    m = d + 1
    log_ratio = (
        math.log(d + 2)
        - d * math.log(2)
        + m * _log_binomial(m, m / 2)
        - _log_binomial(m * m, m * m / 2)
    )
    return TheoryValue(1.0 - math.exp(log_ratio), f"P(convex position), uniform ball, d={d}")


def classical_constants() -> dict[str, TheoryValue]:
    return {
        "gaussian_d2": TheoryValue(
            6.0 / math.pi * math.asin(1.0 / 3.0), "P(convex position), 4 Gaussian points in R^2"
        ),
        "gaussian_d3": TheoryValue(
            0.5 + 5.0 / math.pi * math.asin(0.25), "P(convex position), 5 Gaussian points in R^3"
        ),
        "disk": TheoryValue(1.0 - 35.0 / (12.0 * math.pi**2), "P(convex position), 4 points in a disk"),
        "triangle": TheoryValue.from_exact(Fraction(2, 3), "P(convex position), 4 points in a triangle"),
    }


def gaussian_nonconvex_log_asymptotic(d: int) -> float:
    _require_dim(d)
    return math.log(2.0) + 0.5 * (
        d - math.log(2.0) - (d - 2) * math.log(d + 2) - (d + 1) * math.log(2.0 * math.pi)
    )


def gaussian_nonconvex_asymptotic(d: int) -> float:
    """Large-d asymptotic of the probability that ``d + 2`` Gaussian points are NOT in convex position."""
    return math.exp(gaussian_nonconvex_log_asymptotic(d))

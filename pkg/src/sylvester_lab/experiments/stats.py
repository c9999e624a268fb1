from __future__ import annotations

import math
from statistics import NormalDist


def z_quantile(confidence: float) -> float:
    return NormalDist().inv_cdf(0.5 + confidence / 2.0)


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    z = z_quantile(confidence)
    p = successes / trials
    z2n = z * z / trials
    center = (p + z2n / 2.0) / (1.0 + z2n)
    half = z / (1.0 + z2n) * math.sqrt(p * (1.0 - p) / trials + z2n / (4.0 * trials))
    # clamp rounding so the interval always contains the point estimate
    return min(max(center - half, 0.0), p), max(min(center + half, 1.0), p)


def binomial_z(successes: int, trials: int, p0: float) -> float:
    """Standardized deviation of the sample proportion from ``p0`` under the null."""
    p = successes / trials
    var = p0 * (1.0 - p0) / trials
    if var == 0.0:
        return 0.0 if p == p0 else math.inf
    return (p - p0) / math.sqrt(var)


def mean_interval(total: int, total_sq: int, count: int, confidence: float = 0.99):
    """Sample mean, its standard error and a normal-theory interval from integer sums."""
    mean = total / count
    if count > 1:
        var = (count * total_sq - total * total) / (count * (count - 1))
        stderr = math.sqrt(max(var, 0.0) / count)
    else:
        stderr = 0.0
    z = z_quantile(confidence)
    return mean, stderr, (mean - z * stderr, mean + z * stderr)

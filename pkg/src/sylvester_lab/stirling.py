"""Exact signless Stirling numbers of the first kind.

Python ``int`` serves as the arbitrary-precision integer and
:class:`fractions.Fraction` as the always-reduced rational; no floating
point is used anywhere in this module.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterator


class StirlingTable:
    """Memoized triangular table of signless Stirling numbers ``[n, m]``.

    Row ``n`` holds entries for ``0 <= m <= n`` and is built from row
    ``n - 1`` with ``[n, m] = [n-1, m-1] + (n-1) [n-1, m]``.
    """

    def __init__(self, n_max: int = 0) -> None:
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()
        self.extend(n_max)

    @property
    def n_max(self) -> int:
        return len(self._rows) - 1

    def extend(self, n_max: int) -> None:
        if n_max <= self.n_max:
            return
        with self._lock:
            rows = self._rows
            while len(rows) <= n_max:
                n = len(rows)
                prev = rows[-1]
                row = [0] * (n + 1)
                for m in range(1, n + 1):
                    left = prev[m - 1]
                    right = prev[m] if m < n else 0
                    row[m] = left + (n - 1) * right
                rows.append(tuple(row))

    def row(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise ValueError(f"n must be nonnegative, got {n}")
        self.extend(n)
        return self._rows[n]

    def entry(self, n: int, m: int) -> int:
        if m < 0 or m > n:
            return 0
        return self.row(n)[m]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(list(self._rows))


_TABLE = StirlingTable()


def stirling_first(n: int, m: int) -> int:
    """Number of permutations of ``n`` elements with exactly ``m`` cycles.

    Total on ``n >= 0``: any ``m`` outside ``0..n`` gives 0, and so does
    ``m = 0`` for ``n >= 1``.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return _TABLE.entry(n, m)


def alternating_tail_sum(n: int, top: int) -> int:
    """``[n, top] + [n, top-2] + [n, top-4] + ...`` down to the zero entries."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    top = min(top, n + (top - n) % 2)
    return sum(stirling_first(n, m) for m in range(top, -1, -2))


def rising_factorial(n: int, t: Fraction | int) -> Fraction:
    """``t (t+1) ... (t+n-1)``, with the empty product equal to 1."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    t = Fraction(t)
    out = Fraction(1)
    for k in range(n):
        out *= t + k
    return out


def half_row_identity_check(n: int) -> bool:
    """True iff every other entry of row ``n``, starting from ``[n, n]``, sums to ``n!/2``."""
    if n < 2:
        raise ValueError(f"the half-row identity is stated for n >= 2, got {n}")
    return 2 * alternating_tail_sum(n, n) == math.factorial(n)


def generating_identity_check(n: int, t: Fraction | int) -> bool:
    t = Fraction(t)
    lhs = sum(c * t**k for k, c in enumerate(_TABLE.row(n)))
    return lhs == rising_factorial(n, t)


def row_sum_check(n: int) -> bool:
    return sum(_TABLE.row(n)) == math.factorial(n)


def run_identity_suite(
    n_max: int = 200,
    generating_n_max: int = 60,
    t_values: tuple[int, ...] = (-3, -2, -1, 0, 1, 2, 3),
) -> dict[str, list]:
    """Run the exact identity checks and return the failing cases per identity.

    An empty list for every key means the whole suite passed.
    """
    failures: dict[str, list] = {"row_sum": [], "half_row": [], "generating": []}
    for n in range(n_max + 1):
        if not row_sum_check(n):
            failures["row_sum"].append(n)
        if n >= 2 and not half_row_identity_check(n):
            failures["half_row"].append(n)
    for n in range(2, generating_n_max + 1):
        for t in t_values:
            if not generating_identity_check(n, t):
                failures["generating"].append((n, t))
    return failures

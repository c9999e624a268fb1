"""Exact permutation oracle for exchangeable bridges.

A uniformly random ordering of a fixed zero-sum set of ``d + 2`` integer
increments is an exchangeable bridge. Enumerating all ``(d+2)!`` orderings
and classifying each path exactly gives the convex-position probability as
an exact fraction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..formulas import convex_position_probability
from ..geometry import Outcome, is_convex_position_exact
from ..sampling import RngStream, random_zero_sum_integer_set


@dataclass(frozen=True)
class OracleCertificate:
    d: int
    vectors: tuple[tuple[int, ...], ...]
    tally: dict = field(compare=False)
    rejected_sets: int
    seed: int
    stream_id: int

    @property
    def convex_count(self) -> int:
        return self.tally[Outcome.CONVEX.value]

    @property
    def degenerate_count(self) -> int:
        return self.tally[Outcome.DEGENERATE.value]

    @property
    def total(self) -> int:
        return math.factorial(self.d + 2)

    @property
    def probability(self) -> Fraction:
        return Fraction(self.convex_count, self.total)

    @property
    def matches_theory(self) -> bool:
        return self.degenerate_count == 0 and self.probability == convex_position_probability(self.d).exact

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "vectors": [list(v) for v in self.vectors],
            "tally": dict(self.tally),
            "convex_count": self.convex_count,
            "total": self.total,
            "probability": str(self.probability),
            "rejected_sets": self.rejected_sets,
            "seed": self.seed,
            "stream_id": self.stream_id,
        }


def bridge_points(ordering) -> list[tuple[int, ...]]:
    """``B_1, ..., B_{d+1}`` followed by the origin for one ordering of the increments."""
    d = len(ordering[0])
    acc = [0] * d
    pts = []
    for step in ordering[:-1]:
        acc = [a + s for a, s in zip(acc, step)]
        pts.append(tuple(acc))
    pts.append(tuple([0] * d))
    return pts


def permutation_tally(vectors) -> dict[str, int]:
    tally = {o.value: 0 for o in Outcome}
    for ordering in itertools.permutations(vectors):
        tally[is_convex_position_exact(bridge_points(ordering)).kind.value] += 1
    return tally


def run_permutation_oracle(
    d: int, coord_bound: int, seed: int, stream_id: int = 0, max_tries: int = 10_000
) -> OracleCertificate:
    """Enumerate every ordering of one accepted zero-sum integer set.

    A set is accepted only when all orderings give nondegenerate paths, so
    the certificate's degenerate count is always zero.
    """
    if d > 6:
        raise ValueError("enumeration over (d+2)! orderings is supported for d <= 6")
    rng = RngStream(seed, stream_id)
    state = {"tally": None, "rejected": 0}

    def screen(vectors) -> bool:
        tally = permutation_tally(vectors)
        if tally[Outcome.DEGENERATE.value]:
            state["rejected"] += 1
            return False
        state["tally"] = tally
        return True

    vectors = random_zero_sum_integer_set(d, coord_bound, rng, accept=screen, max_tries=max_tries)
    return OracleCertificate(
        d=d,
        vectors=tuple(vectors),
        tally=state["tally"],
        rejected_sets=state["rejected"],
        seed=seed,
        stream_id=stream_id,
    )

"""Monte Carlo and oracle runners.

Trials are cut into chunks of ``CHUNK_SIZE``; chunk ``k`` draws from stream
``k`` of the configured seed and returns integer tallies. Summing tallies
is order independent, so estimates do not depend on the worker count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from ..formulas import (
    classical_constants,
    convex_position_probability,
    expected_vertices_walk,
    kingman_ball_probability,
)
from ..geometry import CONVEX, DEGENERATE, classify_batch, count_hull_vertices
from ..sampling import (
    bridge_paths,
    fingerprint,
    standard_gaussian,
    uniform_ball,
    uniform_disk,
    uniform_triangle,
    walk_paths,
    RngStream,
)
from .config import ExperimentConfig, Mode
from .oracle import run_permutation_oracle
from .report import ExperimentReport
from .stats import binomial_z, mean_interval, wilson_interval

CHUNK_SIZE = 1 << 16
Z_LIMIT = 4.0
CONFIDENCE = 0.99


def _chunks(samples: int) -> list[tuple[int, int]]:
    return [(k, min(CHUNK_SIZE, samples - k * CHUNK_SIZE)) for k in range(math.ceil(samples / CHUNK_SIZE))]


def _walk_points(cfg: ExperimentConfig, rng: RngStream, size: int) -> np.ndarray:
    return walk_paths(cfg.increment_spec(), cfg.d + 1, rng, size)


def _bridge_points(cfg: ExperimentConfig, rng: RngStream, size: int) -> np.ndarray:
    # B_0 = B_{d+2} = origin once, then B_1..B_{d+1}
    return bridge_paths(cfg.increment_spec(), rng, size)[:, : cfg.d + 2]


def _baseline_points(cfg: ExperimentConfig, rng: RngStream, size: int) -> np.ndarray:
    d, k = cfg.d, cfg.d + 2
    target = cfg.baseline_target
    if target.startswith("gaussian"):
        flat = standard_gaussian(d, rng, size * k)
    elif target == "disk":
        flat = uniform_disk(rng, size * k)
    elif target == "triangle":
        flat = uniform_triangle(rng, size * k)
    elif target == "ball":
        flat = uniform_ball(d, rng, size * k)
    else:
        raise ValueError(f"unknown baseline target {target!r}")
    return flat.reshape(size, k, d)


_POINT_SOURCES = {Mode.WALK: _walk_points, Mode.BRIDGE: _bridge_points, Mode.BASELINE: _baseline_points}


def _run_chunk(cfg: ExperimentConfig, chunk: int, size: int) -> tuple[int, int, int]:
    """Integer tallies for one chunk: (successes or vertex sum, sum of squares, degenerate)."""
    rng = RngStream(cfg.seed, chunk)
    if cfg.mode is Mode.VERTICES:
        paths = walk_paths(cfg.increment_spec(), cfg.n, rng, size)
        counts = [count_hull_vertices(p) for p in paths]
        return sum(counts), sum(c * c for c in counts), 0
    codes, _ = classify_batch(_POINT_SOURCES[cfg.mode](cfg, rng, size))
    convex = int(np.count_nonzero(codes == CONVEX))
    return convex, convex, int(np.count_nonzero(codes == DEGENERATE))


def _run_chunk_star(args):
    return _run_chunk(*args)


def _tally(cfg: ExperimentConfig) -> list[tuple[int, int, int]]:
    jobs = [(cfg, k, size) for k, size in _chunks(cfg.samples)]
    if cfg.workers == 1 or len(jobs) == 1:
        return [_run_chunk(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(_run_chunk_star, jobs))


def _theory(cfg: ExperimentConfig):
    if cfg.mode in (Mode.WALK, Mode.BRIDGE, Mode.ORACLE):
        return convex_position_probability(cfg.d)
    if cfg.mode is Mode.VERTICES:
        return expected_vertices_walk(cfg.n, cfg.d)
    if cfg.baseline_target == "ball":
        return kingman_ball_probability(cfg.d)
    return classical_constants()[cfg.baseline_target]


def _binomial_report(cfg: ExperimentConfig, expected: Mode | tuple) -> ExperimentReport:
    expected = expected if isinstance(expected, tuple) else (expected,)
    if cfg.mode not in expected:
        raise ValueError(f"config mode {cfg.mode.value!r} is not one of {[m.value for m in expected]}")
    start = time.perf_counter()
    tallies = _tally(cfg)
    convex = sum(t[0] for t in tallies)
    degenerate = sum(t[2] for t in tallies)
    classified = cfg.samples - degenerate
    theory = _theory(cfg)
    if classified == 0:
        raise RuntimeError("every trial was degenerate; nothing to estimate")
    estimate = convex / classified
    lo, hi = wilson_interval(convex, classified, CONFIDENCE)
    z = binomial_z(convex, classified, theory.approx)
    return ExperimentReport(
        config=cfg.to_dict(),
        estimate=estimate,
        theory_approx=theory.approx,
        theory_exact=theory.exact,
        ci_low=lo,
        ci_high=hi,
        z_score=z,
        trials_total=cfg.samples,
        trials_degenerate=degenerate,
        check_passed=abs(z) <= Z_LIMIT,
        rng_fingerprint=fingerprint(cfg.seed),
        counts={"convex": convex, "classified": classified},
        wall_time_ms=1000.0 * (time.perf_counter() - start),
    )


def run_walk_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Convex-position frequency of ``S_0..S_{d+1}`` over i.i.d.-increment walks."""
    return _binomial_report(cfg, Mode.WALK)


def run_bridge_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Convex-position frequency of ``B_1..B_{d+1}, 0`` over centered bridges."""
    return _binomial_report(cfg, Mode.BRIDGE)


def run_baseline_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    return _binomial_report(cfg, Mode.BASELINE)


def run_vertex_count_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Mean hull vertex count of ``S_0..S_n`` against the Stirling-number formula."""
    if cfg.mode is not Mode.VERTICES:
        raise ValueError(f"config mode {cfg.mode.value!r} is not 'vertices'")
    start = time.perf_counter()
    tallies = _tally(cfg)
    total = sum(t[0] for t in tallies)
    total_sq = sum(t[1] for t in tallies)
    mean, stderr, (lo, hi) = mean_interval(total, total_sq, cfg.samples, CONFIDENCE)
    theory = _theory(cfg)
    if stderr > 0:
        z = (mean - theory.approx) / stderr
    else:
        z = 0.0 if mean == theory.approx else math.inf
    return ExperimentReport(
        config=cfg.to_dict(),
        estimate=mean,
        theory_approx=theory.approx,
        theory_exact=theory.exact,
        ci_low=lo,
        ci_high=hi,
        z_score=z,
        trials_total=cfg.samples,
        trials_degenerate=0,
        check_passed=abs(z) <= Z_LIMIT,
        rng_fingerprint=fingerprint(cfg.seed),
        counts={"vertex_sum": total, "vertex_sum_sq": total_sq},
        wall_time_ms=1000.0 * (time.perf_counter() - start),
    )


def _oracle_job(args):
    d, coord_bound, seed, stream = args
    return run_permutation_oracle(d, coord_bound, seed, stream)


def run_oracle_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Exact enumeration over ``cfg.samples`` independent zero-sum input sets."""
    if cfg.mode is not Mode.ORACLE:
        raise ValueError(f"config mode {cfg.mode.value!r} is not 'oracle'")
    start = time.perf_counter()
    jobs = [(cfg.d, cfg.coord_bound, cfg.seed, k) for k in range(cfg.samples)]
    if cfg.workers == 1:
        certs = [_oracle_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            certs = list(pool.map(_oracle_job, jobs))
    convex = sum(c.convex_count for c in certs)
    total = sum(c.total for c in certs)
    theory = _theory(cfg)
    return ExperimentReport(
        config=cfg.to_dict(),
        estimate=convex / total,
        theory_approx=theory.approx,
        theory_exact=theory.exact,
        ci_low=None,
        ci_high=None,
        z_score=None,
        trials_total=total,
        trials_degenerate=sum(c.degenerate_count for c in certs),
        check_passed=all(c.matches_theory for c in certs) and Fraction(convex, total) == theory.exact,
        rng_fingerprint=fingerprint(cfg.seed),
        counts={"rejected_sets": sum(c.rejected_sets for c in certs)},
        oracle_exact={"convex_count": convex, "total": total},
        certificates=[c.to_dict() for c in certs],
        wall_time_ms=1000.0 * (time.perf_counter() - start),
    )


RUNNERS = {
    Mode.WALK: run_walk_experiment,
    Mode.BRIDGE: run_bridge_experiment,
    Mode.VERTICES: run_vertex_count_experiment,
    Mode.ORACLE: run_oracle_experiment,
    Mode.BASELINE: run_baseline_experiment,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    return RUNNERS[cfg.mode](cfg)

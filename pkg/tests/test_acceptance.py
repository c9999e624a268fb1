"""Exit criteria. Each test records one PASS/FAIL line shown in the terminal summary."""

import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from sylvester_lab.cli import main
from sylvester_lab.experiments import Mode, build_config, run_experiment
from sylvester_lab.formulas import (
    bridge_vertex_probability,
    convex_position_probability,
    expected_vertices_walk,
    kingman_ball_probability,
)
from sylvester_lab.geometry import (
    Outcome,
    affine_dependence,
    count_hull_vertices,
    is_convex_position,
    is_convex_position_exact,
)
from sylvester_lab.stirling import run_identity_suite

MC_SAMPLES = 1_000_000


def band(d: int, samples: int = MC_SAMPLES) -> float:
    p = 1 - 2 / math.factorial(d + 1)
    return 4 * math.sqrt(p * (1 - p) / samples)


def test_c1_exact_oracle(record, capsys):
    # d=4: 720 * (1 - 2/5!) = 708
    expected = {2: (16, 24), 3: (110, 120), 4: (708, 720)}
    start = time.perf_counter()
    results = {}
    for d, (convex, total) in expected.items():
        code = main(["oracle", "--d", str(d), "--samples", "20", "--seed", str(d), "--format", "json"])
        payload = json.loads(capsys.readouterr().out)
        certs = payload["certificates"]
        results[d] = (
            code == 0
            and len(certs) >= 20
            and all((c["convex_count"], c["total"]) == (convex, total) for c in certs)
            and all(c["tally"]["degenerate"] == 0 for c in certs)
            and Fraction(payload["oracle_exact"]["convex_count"], payload["oracle_exact"]["total"])
            == convex_position_probability(d).exact
        )
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 10
    record("C1 exact permutation oracle", ok, f"d=2:16/24 d=3:110/120 d=4:708/720 x20 sets, {elapsed:.2f}s")
    assert ok, (results, elapsed)


@pytest.mark.parametrize("law", ["gaussian", "cube", "sphere", "cauchy"])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_c2_walk_distribution_free(record, law, d):
    start = time.perf_counter()
    r = run_experiment(build_config(Mode.WALK, {"d": d, "law": law, "samples": MC_SAMPLES, "seed": 2000 + d}))
    elapsed = time.perf_counter() - start
    dev = abs(r.estimate - float(convex_position_probability(d).exact))
    ok = dev < band(d) and elapsed < 60 and r.trials_degenerate / r.trials_total < 1e-4
    record(f"C2 walk law={law} d={d}", ok,
           f"p_hat={r.estimate:.6f} |dev|={dev:.6f} band={band(d):.6f} degenerate={r.trials_degenerate} {elapsed:.1f}s")
    assert ok


@pytest.mark.parametrize("law", ["gaussian", "sphere"])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_c3_bridge(record, law, d):
    start = time.perf_counter()
    r = run_experiment(build_config(Mode.BRIDGE, {"d": d, "law": law, "samples": MC_SAMPLES, "seed": 3000 + d}))
    elapsed = time.perf_counter() - start
    dev = abs(r.estimate - float(convex_position_probability(d).exact))
    ok = dev < band(d) and elapsed < 60 and r.trials_degenerate / r.trials_total < 1e-4
    record(f"C3 bridge law={law} d={d}", ok,
           f"p_hat={r.estimate:.6f} |dev|={dev:.6f} band={band(d):.6f} degenerate={r.trials_degenerate} {elapsed:.1f}s")
    assert ok


@pytest.mark.parametrize("d, n, target, tol", [(2, 10, Fraction(7381, 1260), 0.03), (3, 4, Fraction(59, 12), 0.02)])
def test_c4_mean_vertices(record, d, n, target, tol):
    assert expected_vertices_walk(n, d).exact == target
    r = run_experiment(build_config(Mode.VERTICES, {"d": d, "n": n, "samples": 100_000, "seed": 4000 + d}))
    dev = abs(r.estimate - float(target))
    ok = dev < tol
    record(f"C4 vertex count d={d} n={n}", ok, f"mean={r.estimate:.5f} target={float(target):.5f} tol={tol}")
    assert ok


def test_c5_stirling_identities(record):
    start = time.perf_counter()
    failures = run_identity_suite(n_max=200, generating_n_max=60, t_values=(-3, -2, -1, 0, 1, 2, 3))
    elapsed = time.perf_counter() - start
    ok = not any(failures.values()) and elapsed < 5
    record("C5 half-row, generating and row-sum identities", ok, f"{elapsed:.2f}s")
    assert ok, failures


def test_c6_proof_accounting(record):
    start = time.perf_counter()
    ok = True
    for d in range(1, 31):
        mean = expected_vertices_walk(d + 1, d).exact
        ok &= mean + (1 - convex_position_probability(d).exact) == d + 2
        ok &= (d + 2) * bridge_vertex_probability(d).exact == mean
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1
    record("C6 E[f0] + (1 - p) = d + 2 and bridge vertex sum, d=1..30", ok, f"{elapsed * 1000:.1f}ms")
    assert ok


def test_c7_classical_baselines(record):
    kingman_err = abs(kingman_ball_probability(2).approx - (1 - 35 / (12 * math.pi**2)))
    ok = kingman_err < 1e-9
    lines = [f"kingman(2) err={kingman_err:.1e}"]
    for target, value, tol in [("triangle", 2 / 3, 0.002), ("gaussian_d2", 0.6490, 0.002), ("gaussian_d3", 0.9022, 0.0012)]:
        r = run_experiment(build_config(Mode.BASELINE, {"baseline_target": target, "samples": MC_SAMPLES, "seed": 7}))
        dev = abs(r.estimate - value)
        ok &= dev < tol
        lines.append(f"{target}={r.estimate:.5f}")
    record("C7 classical baselines", ok, " ".join(lines))
    assert ok


def _random_integer_configs(d: int, count: int, seed: int):
    rng = np.random.default_rng(seed)
    while count:
        P = rng.integers(-10**6, 10**6, size=(d + 2, d), endpoint=True)
        exact_pts = [tuple(int(c) for c in p) for p in P]
        exact = is_convex_position_exact(exact_pts)
        if exact.kind is Outcome.DEGENERATE or affine_dependence(P).min_rel_coeff < 1e-6:
            continue
        count -= 1
        yield P, exact


@pytest.mark.parametrize("d", [2, 3, 4])
def test_c8_geometry_equivalence(record, d):
    agree = dichotomy = total = 0
    for P, exact in _random_integer_configs(d, 10_000, 8000 + d):
        fl = is_convex_position(P)
        agree += fl == exact
        vertices = count_hull_vertices(P.astype(float))
        dichotomy += vertices == (d + 2 if fl.kind is Outcome.CONVEX else d + 1)
        total += 1
    ok = agree == total == dichotomy
    record(f"C8 float/exact/vertex-count agreement d={d}", ok, f"{agree}/{total} agree, {dichotomy}/{total} dichotomy")
    assert ok


@pytest.mark.parametrize(
    "mode, values",
    [
        (Mode.WALK, {"d": 3, "law": "cauchy", "samples": MC_SAMPLES, "seed": 9}),
        (Mode.BRIDGE, {"d": 2, "law": "sphere", "samples": 300_000, "seed": 9}),
        (Mode.VERTICES, {"d": 2, "n": 10, "samples": 150_000, "seed": 9}),
        (Mode.BASELINE, {"baseline_target": "gaussian_d3", "samples": 300_000, "seed": 9}),
        (Mode.ORACLE, {"d": 3, "samples": 8, "seed": 9}),
    ],
    ids=lambda v: v.value if isinstance(v, Mode) else "",
)
def test_c9_determinism(record, mode, values):
    payloads = []
    for workers in (1, 1, 4):
        r = run_experiment(build_config(mode, {**values, "workers": workers}))
        payload = r.to_dict(include_wall_time=False)
        payload["config"].pop("workers")
        payloads.append(json.dumps(payload, sort_keys=True))
    ok = payloads[0] == payloads[1] == payloads[2]
    record(f"C9 determinism {mode.value}", ok, "identical JSON for workers 1, 1, 4")
    assert ok

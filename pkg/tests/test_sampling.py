import numpy as np
import pytest
from scipy import stats

from sylvester_lab.geometry import general_position_check
from sylvester_lab.sampling import (
    IncrementSpec,
    Law,
    PathKind,
    RngStream,
    bridge_path_centered,
    bridge_paths,
    random_zero_sum_integer_set,
    sample_increment,
    sample_increments,
    uniform_ball,
    uniform_triangle,
    walk_path,
    walk_paths,
)

ALL_LAWS = list(Law)


def test_gaussian_mean_and_variance():
    x = sample_increments(IncrementSpec(Law.GAUSSIAN, 2), RngStream(1), 1_000_000)
    assert np.all(np.abs(x.mean(axis=0)) < 4e-3)
    np.testing.assert_allclose(x.var(axis=0), 1.0, atol=5e-3)
    assert stats.kstest(x[:100_000, 0], "norm").pvalue > 1e-3


def test_sphere_draws_have_unit_norm():
    x = sample_increments(IncrementSpec(Law.SPHERE, 3), RngStream(2), 10_000)
    np.testing.assert_allclose(np.linalg.norm(x, axis=1), 1.0, atol=1e-12)
    x = sample_increments(IncrementSpec(Law.SPHERE, 3, scale=2.5), RngStream(2), 100)
    np.testing.assert_allclose(np.linalg.norm(x, axis=1), 2.5, atol=1e-12)


def test_cube_is_uniform_in_range():
    x = sample_increments(IncrementSpec(Law.CUBE, 3, scale=2.0), RngStream(3), 100_000)
    assert x.min() >= -2.0 and x.max() <= 2.0
    assert stats.kstest(x[:, 1], "uniform", args=(-2.0, 4.0)).pvalue > 1e-3


def test_cauchy_radius_is_half_cauchy():
    spec = IncrementSpec(Law.CAUCHY, 3, scale=2.0)
    r = np.linalg.norm(sample_increments(spec, RngStream(4), 100_000), axis=1)
    assert stats.kstest(r, stats.halfcauchy(scale=2.0).cdf).pvalue > 1e-3


def test_determinism_bit_identical():
    spec = IncrementSpec(Law.GAUSSIAN, 2)
    a = sample_increments(spec, RngStream(7, 0), 1000)
    b = sample_increments(spec, RngStream(7, 0), 1000)
    assert a.tobytes() == b.tobytes()
    c = sample_increments(spec, RngStream(7, 1), 1000)
    assert not np.array_equal(a, c)


@pytest.mark.parametrize("law", ALL_LAWS)
@pytest.mark.parametrize("d", [2, 3, 5])
def test_batch_equals_sequential_draws(law, d):
    spec = IncrementSpec(law, d)
    batch = sample_increments(spec, RngStream(9, 3), 50)
    rng = RngStream(9, 3)
    seq = np.array([sample_increment(spec, rng) for _ in range(50)])
    assert batch.tobytes() == seq.tobytes()


def test_frozen_first_draws():
    # pins the uniform-to-double conversion and the stream keying
    u = RngStream(7, 0).uniforms(2)
    raw = np.random.Philox(key=7).random_raw(2)
    np.testing.assert_array_equal(u, (raw >> np.uint64(11)) / 2.0**53)


def test_distinct_streams_uncorrelated():
    a = RngStream(5, 0).uniforms(100_000)
    b = RngStream(5, 1).uniforms(100_000)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.02


@pytest.mark.parametrize(
    "kwargs",
    [dict(law=Law.GAUSSIAN, d=0), dict(law=Law.CUBE, d=2, scale=0.0), dict(law=Law.CAUCHY, d=2, scale=-1.0),
     dict(law=Law.SPHERE, d=1)],
)
def test_invalid_specs(kwargs):
    with pytest.raises(ValueError):
        IncrementSpec(**kwargs)


def test_spec_accepts_law_strings():
    assert IncrementSpec("cube", 2).law is Law.CUBE


def test_walk_path_shapes_and_origin():
    spec = IncrementSpec(Law.GAUSSIAN, 2)
    p = walk_path(2, 1, spec, RngStream(1))
    assert p.kind is PathKind.WALK and p.points.shape == (2, 2) and p.n == 1
    assert (p.points[0] == 0).all()
    p = walk_path(2, 3, spec, RngStream(1))
    assert p.points.shape == (4, 2)
    q = walk_path(2, 3, spec, RngStream(1))
    assert p.points.tobytes() == q.points.tobytes()
    with pytest.raises(ValueError):
        walk_path(3, 3, spec, RngStream(1))
    with pytest.raises(ValueError):
        walk_path(2, 0, spec, RngStream(1))


def test_walk_steps_are_the_increments():
    spec = IncrementSpec(Law.CUBE, 3)
    paths = walk_paths(spec, 4, RngStream(2), 10)
    steps = sample_increments(spec, RngStream(2), 40).reshape(10, 4, 3)
    np.testing.assert_allclose(np.diff(paths, axis=1), steps, atol=1e-14)


@pytest.mark.parametrize("law", ALL_LAWS)
@pytest.mark.parametrize("d", [2, 3, 6, 10])
def test_bridge_closure(law, d):
    spec = IncrementSpec(law, d)
    rng = RngStream(11, d)
    count = 100_000 if d <= 3 else 20_000
    length = d + 2
    X = sample_increments(spec, rng, count * length).reshape(count, length, d)
    paths = bridge_paths(spec, RngStream(11, d), count)
    max_step = np.linalg.norm(X, axis=2).max(axis=1)
    end = np.linalg.norm(paths[:, -1], axis=1)
    assert (end <= 1e-12 * max_step).all()
    assert (paths[:, 0] == 0).all()


def test_bridge_path_object():
    p = bridge_path_centered(2, IncrementSpec(Law.GAUSSIAN, 2), RngStream(1))
    assert p.kind is PathKind.BRIDGE and p.points.shape == (5, 2)


def test_bridge_increments_exchangeable():
    spec = IncrementSpec(Law.GAUSSIAN, 2)
    paths = bridge_paths(spec, RngStream(13), 100_000)
    xi = np.diff(paths, axis=1)
    n1 = np.linalg.norm(xi[:, 0], axis=1)
    n2 = np.linalg.norm(xi[:, 1], axis=1)
    res = stats.ks_2samp(n1, n2)
    critical = 1.628 * np.sqrt(2 / 100_000)  # 1% two-sample KS critical value
    assert res.statistic < critical


def test_walk_general_position_planar_gaussian():
    paths = walk_paths(IncrementSpec(Law.GAUSSIAN, 2), 3, RngStream(17), 100_000)
    degenerate = sum(not general_position_check(p) for p in paths)
    assert degenerate == 0


def test_lattice_walk_is_a_negative_example():
    # integer steps charge hyperplanes; collinear configurations show up quickly
    rng = np.random.default_rng(0)
    steps = rng.integers(-1, 2, size=(2000, 3, 2))
    paths = np.concatenate([np.zeros((2000, 1, 2), dtype=int), np.cumsum(steps, axis=1)], axis=1)
    assert any(not general_position_check([tuple(int(c) for c in q) for q in p]) for p in paths)


def test_zero_sum_integer_set():
    vecs = random_zero_sum_integer_set(2, 10, RngStream(1))
    assert len(vecs) == 4
    assert all(isinstance(c, int) for v in vecs for c in v)
    assert tuple(map(sum, zip(*vecs))) == (0, 0)
    assert all(abs(c) <= 10 for v in vecs[:3] for c in v)
    assert all(abs(c) <= 30 for c in vecs[3])
    assert vecs == random_zero_sum_integer_set(2, 10, RngStream(1))


def test_zero_sum_integer_set_retries_and_aborts():
    calls = []

    def reject_first_three(v):
        calls.append(v)
        return len(calls) > 3

    random_zero_sum_integer_set(3, 5, RngStream(2), accept=reject_first_three)
    assert len(calls) == 4
    with pytest.raises(RuntimeError, match="coord_bound"):
        random_zero_sum_integer_set(2, 1, RngStream(2), accept=lambda v: False, max_tries=50)
    with pytest.raises(ValueError):
        random_zero_sum_integer_set(2, 0, RngStream(2))


def test_integers_unbiased_range():
    x = RngStream(3).integers(-2, 2, 50_000)
    assert set(np.unique(x)) == {-2, -1, 0, 1, 2}
    counts = np.bincount(x + 2)
    assert stats.chisquare(counts).pvalue > 1e-3


def test_point_laws_in_domain():
    t = uniform_triangle(RngStream(1), 10_000)
    assert (t >= 0).all() and (t.sum(axis=1) <= 1).all()
    b = uniform_ball(3, RngStream(1), 10_000)
    assert (np.linalg.norm(b, axis=1) <= 1).all()
    # radial law of the uniform ball: P(|x| <= r) = r^3
    assert stats.kstest(np.linalg.norm(b, axis=1) ** 3, "uniform").pvalue > 1e-3

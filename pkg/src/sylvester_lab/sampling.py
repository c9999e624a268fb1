"""Seed-deterministic increment laws, random walks and centered bridges.

Randomness comes from numpy's counter-based Philox4x64 generator keyed by
``(seed, stream_id)``. Uniform doubles are ``(raw >> 11) * 2**-53`` and every
law is a fixed transform of a fixed number of uniforms per draw:

* normals use Box-Muller on pairs ``(1 - u1, u2)``, so ``k`` normals consume
  ``2 * ceil(k / 2)`` uniforms and no rejection loop exists;
* ``cube`` uses ``d`` uniforms, ``sphere`` the normals of a ``d``-vector,
  ``cauchy`` those normals plus one uniform for the radius.

Because each increment consumes a fixed block, drawing ``m`` increments at
once yields exactly the same numbers as ``m`` single draws.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

_MASK64 = (1 << 64) - 1


class Law(enum.Enum):
    GAUSSIAN = "gaussian"
    CUBE = "cube"
    SPHERE = "sphere"
    CAUCHY = "cauchy"


class PathKind(enum.Enum):
    WALK = "walk"
    BRIDGE = "bridge"


@dataclass(frozen=True)
class IncrementSpec:
    """An increment law in R^d that gives zero mass to every affine hyperplane.

    ``scale`` is the half-width for ``cube``, the radius for ``sphere`` and
    the Cauchy scale for ``cauchy``; it is unused for ``gaussian``.
    """

    law: Law
    d: int
    scale: float = 1.0

    def __post_init__(self):
        if not isinstance(self.law, Law):
            object.__setattr__(self, "law", Law(self.law))
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if not self.scale > 0:
            raise ValueError(f"scale parameter must be positive, got {self.scale}")
        if self.law is Law.SPHERE and self.d < 2:
            # the 0-sphere is two atoms, which charges a hyperplane
            raise ValueError("the sphere law needs d >= 2")

    @property
    def uniforms_per_draw(self) -> int:
        even = 2 * ((self.d + 1) // 2)
        return {
            Law.GAUSSIAN: even,
            Law.CUBE: self.d,
            Law.SPHERE: even,
            Law.CAUCHY: even + 1,
        }[self.law]


class RngStream:
    """A reproducible stream of uniforms identified by ``(seed, stream_id)``.

    The stream position is the Philox counter; drawing advances it. Two
    streams with equal identifiers produce identical sequences.
    """

    def __init__(self, seed: int, stream_id: int = 0) -> None:
        self.seed = int(seed) & _MASK64
        self.stream_id = int(stream_id) & _MASK64
        self._bits = np.random.Philox(key=(self.stream_id << 64) | self.seed)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"

    def uniforms(self, count: int) -> np.ndarray:
        raw = self._bits.random_raw(count)
        return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)

    def integers(self, low: int, high: int, count: int) -> np.ndarray:
        """Uniform integers in ``[low, high]`` by (unbiased) rejection on raw words."""
        span = high - low + 1
        if span <= 0 or span > 1 << 62:
            raise ValueError("integer range must be nonempty and below 2**62")
        limit = ((1 << 64) // span) * span
        out = []
        while len(out) < count:
            raw = self._bits.random_raw(count - len(out)).tolist()
            out.extend(low + r % span for r in raw if r < limit)
        return np.array(out, dtype=np.int64)


def fingerprint(seed: int, stream_id: int = 0, words: int = 4) -> str:
    """Short hash of the first raw words of a stream, for report provenance."""
    raw = np.random.Philox(key=((stream_id & _MASK64) << 64) | (seed & _MASK64)).random_raw(words)
    return "philox4x64:" + hashlib.sha256(raw.tobytes()).hexdigest()[:16]


def _box_muller(u: np.ndarray) -> np.ndarray:
    """Normals from uniforms shaped ``(..., 2k)``; returns shape ``(..., 2k)``."""
    u1 = 1.0 - u[..., 0::2]
    u2 = u[..., 1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    out = np.empty_like(u)
    out[..., 0::2] = r * np.cos(theta)
    out[..., 1::2] = r * np.sin(theta)
    return out


def _transform(spec: IncrementSpec, u: np.ndarray) -> np.ndarray:
    d = spec.d
    if spec.law is Law.CUBE:
        return spec.scale * (2.0 * u - 1.0)
    if spec.law is Law.GAUSSIAN:
        return _box_muller(u)[..., :d]
    if spec.law is Law.SPHERE:
        g = _box_muller(u)[..., :d]
        return spec.scale * g / np.linalg.norm(g, axis=-1, keepdims=True)
    even = 2 * ((d + 1) // 2)
    g = _box_muller(u[..., :even])[..., :d]
    direction = g / np.linalg.norm(g, axis=-1, keepdims=True)
    radius = np.abs(np.tan(np.pi * (u[..., even] - 0.5)))
    return spec.scale * radius[..., None] * direction


def sample_increments(spec: IncrementSpec, rng: RngStream, count: int) -> np.ndarray:
    """``count`` i.i.d. increments, shape ``(count, d)``."""
    k = spec.uniforms_per_draw
    return _transform(spec, rng.uniforms(count * k).reshape(count, k))


def sample_increment(spec: IncrementSpec, rng: RngStream) -> np.ndarray:
    return sample_increments(spec, rng, 1)[0]


@dataclass(frozen=True)
class PathSample:
    d: int
    kind: PathKind
    points: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.points) - 1


def walk_paths(spec: IncrementSpec, n: int, rng: RngStream, count: int) -> np.ndarray:
    """``count`` walks ``S_0 = 0, ..., S_n`` as an array ``(count, n+1, d)``."""
    if n < 1:
        raise ValueError(f"walk length must be >= 1, got {n}")
    steps = sample_increments(spec, rng, count * n).reshape(count, n, spec.d)
    out = np.zeros((count, n + 1, spec.d))
    np.cumsum(steps, axis=1, out=out[:, 1:])
    return out


def walk_path(d: int, n: int, spec: IncrementSpec, rng: RngStream) -> PathSample:
    _check_dim(d, spec)
    return PathSample(d, PathKind.WALK, walk_paths(spec, n, rng, 1)[0])


def bridge_paths(spec: IncrementSpec, rng: RngStream, count: int) -> np.ndarray:
    """``count`` centered bridges ``B_0 = 0, ..., B_{d+2}``, shape ``(count, d+3, d)``.

    Increments are ``X_i - mean(X)`` for i.i.d. ``X_1..X_{d+2}``; they are
    exchangeable and sum to zero up to rounding.
    """
    length = spec.d + 2
    X = sample_increments(spec, rng, count * length).reshape(count, length, spec.d)
    xi = X - X.mean(axis=1, keepdims=True)
    out = np.zeros((count, length + 1, spec.d))
    np.cumsum(xi, axis=1, out=out[:, 1:])
    return out


def bridge_path_centered(d: int, spec: IncrementSpec, rng: RngStream) -> PathSample:
    _check_dim(d, spec)
    return PathSample(d, PathKind.BRIDGE, bridge_paths(spec, rng, 1)[0])


def _check_dim(d: int, spec: IncrementSpec) -> None:
    if d != spec.d:
        raise ValueError(f"dimension {d} does not match increment spec dimension {spec.d}")


def random_zero_sum_integer_set(
    d: int,
    coord_bound: int,
    rng: RngStream,
    accept: Callable[[list[tuple[int, ...]]], bool] | None = None,
    max_tries: int = 10_000,
) -> list[tuple[int, ...]]:
    """``d + 2`` integer vectors summing to zero.

    The first ``d + 1`` have i.i.d. uniform coordinates in
    ``[-coord_bound, coord_bound]`` and the last is minus their sum. Sets are
    redrawn until ``accept`` (if given) approves one.
    """
    if coord_bound < 1:
        raise ValueError(f"coord_bound must be >= 1, got {coord_bound}")
    for _ in range(max_tries):
        flat = rng.integers(-coord_bound, coord_bound, (d + 1) * d).tolist()
        vecs = [tuple(flat[i * d : (i + 1) * d]) for i in range(d + 1)]
        vecs.append(tuple(-sum(v[k] for v in vecs) for k in range(d)))
        if accept is None or accept(vecs):
            return vecs
    raise RuntimeError(
        f"no acceptable zero-sum set after {max_tries} draws (d={d}, coord_bound={coord_bound}); "
        "increase coord_bound"
    )


# point laws for the classical i.i.d. formulations

def uniform_ball(d: int, rng: RngStream, count: int) -> np.ndarray:
    even = 2 * ((d + 1) // 2)
    u = rng.uniforms(count * (even + 1)).reshape(count, even + 1)
    g = _box_muller(u[:, :even])[:, :d]
    direction = g / np.linalg.norm(g, axis=1, keepdims=True)
    return direction * (u[:, even] ** (1.0 / d))[:, None]


def uniform_disk(rng: RngStream, count: int) -> np.ndarray:
    u = rng.uniforms(2 * count).reshape(count, 2)
    r = np.sqrt(u[:, 0])
    theta = 2.0 * np.pi * u[:, 1]
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def uniform_triangle(rng: RngStream, count: int) -> np.ndarray:
    """Uniform points in the triangle ``(0,0), (1,0), (0,1)`` by folding the square."""
    u = rng.uniforms(2 * count).reshape(count, 2)
    flip = u.sum(axis=1) > 1.0
    u[flip] = 1.0 - u[flip]
    return u


def standard_gaussian(d: int, rng: RngStream, count: int) -> np.ndarray:
    return sample_increments(IncrementSpec(Law.GAUSSIAN, d), rng, count)

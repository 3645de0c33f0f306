"""Seeded uniform samplers for points in bodies and directions on spheres.

Streams are counter-based (Philox keyed by (seed, stream_id)), so distinct
stream ids give statistically independent, platform-reproducible substreams:
identical (seed, stream_id, request sequence) yields bit-identical output.

Exact samplers exist for every kind except VPolytope, which falls back to
rejection from its axis-aligned bounding box; very thin polytopes raise
ThinBodyError and should be handled with the chord estimator instead.
"""

from __future__ import annotations

import numpy as np

from .bodies import (
    Ball,
    Box,
    ConvexBody,
    Ellipsoid,
    RegularPolygon,
    Simplex,
    VPolytope,
)

MAX_CONSECUTIVE_REJECTIONS = 1_000_000

__all__ = [
    "RngStream",
    "ThinBodyError",
    "sample_point",
    "sample_points",
    "sample_direction",
    "sample_directions",
]


class ThinBodyError(RuntimeError):
    """Rejection sampling failed; the body is too thin for its bounding box."""


class RngStream:
    """Reproducible random stream identified by (seed, stream_id).

    Wraps a Philox counter-based generator keyed by both integers; the same
    pair always reproduces the same sample sequence, and distinct stream ids
    are independent, which is what makes per-worker substreams deterministic.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        seed = int(seed)
        stream_id = int(stream_id)
        if stream_id < 0:
            raise ValueError(f"stream_id must be non-negative, got {stream_id}")
        self.seed = seed
        self.stream_id = stream_id
        key = np.array([seed & 0xFFFFFFFFFFFFFFFF, stream_id], dtype=np.uint64)
        self.generator = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def sample_directions(d: int, n: int, rng: RngStream, hemisphere: bool = False) -> np.ndarray:
    """n directions uniform on the sphere S^{d-1}, as an (n, d) array.

    Normalized isotropic Gaussian vectors. With ``hemisphere`` the sign is
    flipped so the first nonzero coordinate is positive, counting each
    undirected line exactly once.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    g = rng.generator.standard_normal((n, d))
    norms = np.linalg.norm(g, axis=1)
    while (bad := norms == 0.0).any():  # probability zero, kept for safety
        g[bad] = rng.generator.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(g, axis=1)
    u = g / norms[:, None]
    if hemisphere:
        first = u[np.arange(n), np.argmax(u != 0.0, axis=1)]
        u *= np.sign(first)[:, None]
    return u


def sample_direction(d: int, rng: RngStream, hemisphere: bool = False) -> np.ndarray:
    return sample_directions(d, 1, rng, hemisphere)[0]


def _sample_ball_unit(d: int, n: int, rng: RngStream) -> np.ndarray:
    u = sample_directions(d, n, rng)
    r = rng.generator.random(n) ** (1.0 / d)
    return u * r[:, None]


def _sample_simplex_weights(d: int, n: int, rng: RngStream) -> np.ndarray:
    # Dirichlet(1, ..., 1) via spacings of sorted uniforms: d+1 weights
    u = np.sort(rng.generator.random((n, d)), axis=1)
    return np.diff(u, axis=1, prepend=0.0, append=1.0)


def sample_points(body: ConvexBody, n: int, rng: RngStream) -> np.ndarray:
    """n points uniform in the body, as an (n, d) array."""
    if n < 0:
        raise ValueError(f"sample count must be non-negative, got {n}")
    gen = rng.generator
    if isinstance(body, Box):
        span = body.upper - body.lower
        return body.lower + gen.random((n, body.dim)) * span
    if isinstance(body, Ball):
        return body.center + body.radius * _sample_ball_unit(body.dim, n, rng)
    if isinstance(body, Ellipsoid):
        return body.center + body.semi_axes * _sample_ball_unit(body.dim, n, rng)
    if isinstance(body, Simplex):
        w = _sample_simplex_weights(body.dim, n, rng)
        return w @ body.vertices
    if isinstance(body, RegularPolygon):
        V = body.vertices
        k = gen.integers(0, body.n_sides, size=n)
        a = V[k]
        b = V[(k + 1) % body.n_sides]
        r1 = np.sqrt(gen.random(n))[:, None]
        r2 = gen.random(n)[:, None]
        return r1 * ((1.0 - r2) * a + r2 * b)
    if isinstance(body, VPolytope):
        return _sample_rejection(body, n, rng)
    raise TypeError(f"no sampler for body type {type(body).__name__}")


def sample_point(body: ConvexBody, rng: RngStream) -> np.ndarray:
    return sample_points(body, 1, rng)[0]


def _sample_rejection(body: ConvexBody, n: int, rng: RngStream) -> np.ndarray:
    lo, hi = body.bounding_box()
    span = hi - lo
    gen = rng.generator
    out = np.empty((n, body.dim))
    got = 0
    consecutive_rejections = 0
    batch = max(4 * n, 1024)
    while got < n:
        cand = lo + gen.random((batch, body.dim)) * span
        ok = body.contains_many(cand)
        hits = cand[ok]
        if hits.shape[0] == 0:
            consecutive_rejections += batch
            if consecutive_rejections > MAX_CONSECUTIVE_REJECTIONS:
                raise ThinBodyError(
                    "rejection sampling exceeded 10^6 consecutive rejections; "
                    "the body is too thin for its bounding box - use the chord "
                    "estimator (chord_mean_distance) instead"
                )
            continue
        consecutive_rejections = 0
        take = min(n - got, hits.shape[0])
        out[got : got + take] = hits[:take]
        got += take
    return out

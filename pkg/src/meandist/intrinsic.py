"""Mean width, first intrinsic volume and the mean-distance ratio.

The mean width here is the average of the projection length |P_u K| over
directions u, i.e. the direction measure is the normalized uniform probability
measure on S^{d-1}. The first intrinsic volume rescales it by

    V1(K) = sqrt(pi) * Gamma((d+1)/2) / Gamma(d/2) * mean_width(K),

the normalization under which V1 of a segment is its length and V1 of a
planar body is half its perimeter; both identities are pinned by tests rather
than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, lgamma, pi, sqrt

import numpy as np

from .bodies import ConvexBody
from .distance import Estimate, chord_mean_distance, mc_mean_distance
from .sampling import RngStream, sample_directions

__all__ = [
    "SphereQuadrature",
    "v1_prefactor",
    "mean_width",
    "v1",
    "v1_with_error",
    "ratio",
]


@dataclass(frozen=True)
class SphereQuadrature:
    """Rule for averaging over directions: seeded MC, or a planar angle grid.

    ``grid2d`` uses the midpoint rule on [0, pi), evaluating each undirected
    line once (widths are symmetric), and is only valid in dimension 2.
    """

    kind: str
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("mc", "grid2d"):
            raise ValueError(f"kind must be 'mc' or 'grid2d', got {self.kind!r}")
        if self.n < 8:
            raise ValueError(f"need at least 8 directions/angles, got {self.n}")

    @classmethod
    def mc(cls, n_dirs: int, seed: int = 0) -> "SphereQuadrature":
        return cls("mc", n_dirs, seed)

    @classmethod
    def grid2d(cls, n_angles: int) -> "SphereQuadrature":
        return cls("grid2d", n_angles)


def v1_prefactor(d: int) -> float:
    """sqrt(pi) Gamma((d+1)/2) / Gamma(d/2)."""
    return sqrt(pi) * exp(lgamma((d + 1) / 2) - lgamma(d / 2))


def _directions(body: ConvexBody, q: SphereQuadrature) -> np.ndarray:
    if q.kind == "grid2d":
        if body.dim != 2:
            raise ValueError(f"grid2d quadrature needs dimension 2, body has {body.dim}")
        theta = (np.arange(q.n) + 0.5) * pi / q.n
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    return sample_directions(body.dim, q.n, RngStream(q.seed, 0))


def _width_stats(body: ConvexBody, q: SphereQuadrature) -> tuple[float, float]:
    widths = body.width_many(_directions(body, q))
    mean = float(widths.mean())
    if q.kind == "mc" and q.n > 1:
        se = float(widths.std(ddof=1)) / sqrt(q.n)
    else:
        se = 0.0  # deterministic rule
    return mean, se


def mean_width(body: ConvexBody, q: SphereQuadrature) -> float:
    """Average projection length over quadrature directions."""
    return _width_stats(body, q)[0]


def v1(body: ConvexBody, q: SphereQuadrature) -> float:
    """First intrinsic volume from the quadrature mean width."""
    return v1_prefactor(body.dim) * mean_width(body, q)


def v1_with_error(body: ConvexBody, q: SphereQuadrature) -> tuple[float, float]:
    """(V1 estimate, standard error); the error is 0 for the planar grid."""
    mean, se = _width_stats(body, q)
    c = v1_prefactor(body.dim)
    return c * mean, c * se


def default_quadrature(body: ConvexBody, seed: int = 0, n_dirs: int = 20_000) -> SphereQuadrature:
    if body.dim == 2:
        return SphereQuadrature.grid2d(7200)
    return SphereQuadrature.mc(n_dirs, seed)


def ratio(
    body: ConvexBody,
    n_samples: int = 1_000_000,
    quadrature: SphereQuadrature | None = None,
    seed: int = 0,
    delta_method: str = "mc",
    threads: int = 1,
    n_offsets: int = 32,
) -> tuple[float, float]:
    """Point estimate and standard error of Delta(K) / V1(K).

    The numerator uses the requested estimator; the denominator is the
    quadrature V1 (exact angle grid in the plane, seeded MC otherwise, with an
    independent substream). Errors combine in quadrature as relative errors of
    the two factors.
    """
    if quadrature is None:
        quadrature = default_quadrature(body, seed=seed + 101)
    if delta_method == "mc":
        est: Estimate = mc_mean_distance(body, n_samples, seed=seed, threads=threads)
    elif delta_method == "chord":
        n_dirs = max(n_samples // n_offsets, 1)
        est = chord_mean_distance(body, n_dirs, n_offsets, seed=seed)
    else:
        raise ValueError(f"delta_method must be 'mc' or 'chord', got {delta_method!r}")
    v1_val, v1_se = v1_with_error(body, quadrature)
    r = est.value / v1_val
    rel = sqrt((est.std_error / est.value) ** 2 + (v1_se / v1_val) ** 2) if est.value > 0 else 0.0
    return r, r * rel

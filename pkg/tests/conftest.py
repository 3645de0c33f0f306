"""Shared body fixtures for the test suite."""

from __future__ import annotations

import numpy as np

from meandist import Ball, Box, Ellipsoid, RegularPolygon, RngStream, Simplex, VPolytope


def unit_disc() -> Ball:
    return Ball(np.zeros(2), 1.0)


def unit_ball3() -> Ball:
    return Ball(np.zeros(3), 1.0)


def unit_square() -> Box:
    return Box([0.0, 0.0], [1.0, 1.0])


def unit_cube() -> Box:
    return Box([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])


def random_vpolytope(d: int, n_points: int, seed: int) -> VPolytope:
    gen = RngStream(seed, 0).generator
    pts = gen.standard_normal((n_points, d))
    return VPolytope(pts)


def corpus_2d() -> list:
    """Ten genuine planar bodies for ratio sweeps."""
    return [
        unit_disc(),
        unit_square(),
        Box([0.0, 0.0], [2.0, 1.0]),
        Ellipsoid(np.zeros(2), [1.0, 2.0]),
        RegularPolygon(3, 1.0),
        RegularPolygon(5, 1.0),
        RegularPolygon(6, 1.0),
        RegularPolygon(8, 1.0),
        Simplex([[0.0, 0.0], [2.0, 0.3], [0.5, 1.5]]),
        random_vpolytope(2, 9, seed=11),
    ]


def corpus_3d() -> list:
    """Ten genuine three-dimensional bodies for ratio sweeps."""
    return [
        unit_ball3(),
        unit_cube(),
        Box([0.0, 0.0, 0.0], [2.0, 1.0, 1.0]),
        Ellipsoid(np.zeros(3), [1.0, 1.5, 0.75]),
        Simplex([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
        Simplex([[0.2, 0.0, 0.1], [1.3, 0.2, 0.0], [0.0, 1.1, 0.2], [0.3, 0.2, 1.4]]),
        Ball(np.array([0.5, -0.25, 1.0]), 0.8),
        random_vpolytope(3, 12, seed=21),
        random_vpolytope(3, 14, seed=22),
        random_vpolytope(3, 10, seed=23),
    ]

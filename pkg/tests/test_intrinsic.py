import numpy as np
import pytest

from meandist import (
    Ball,
    Box,
    RegularPolygon,
    SphereQuadrature,
    bound_constants,
    diameter,
    k_prime_delta,
    mean_width,
    ratio,
    v1,
    v1_with_error,
)
from conftest import corpus_2d, corpus_3d, unit_ball3, unit_disc, unit_square

PI = np.pi
GRID = SphereQuadrature.grid2d(7200)


def polygon_perimeter(body) -> float:
    V = body.vertices
    return float(np.linalg.norm(np.roll(V, -1, axis=0) - V, axis=1).sum())


class TestMeanWidth:
    def test_ball_constant(self):
        assert mean_width(unit_disc(), GRID) == pytest.approx(2.0, abs=1e-12)
        assert mean_width(unit_ball3(), SphereQuadrature.mc(5000, seed=1)) == pytest.approx(2.0)

    def test_square_grid(self):
        # Cauchy: mean width of a planar body is perimeter / pi
        assert mean_width(unit_square(), SphereQuadrature.grid2d(3600)) == pytest.approx(
            4.0 / PI, abs=1e-6
        )

    def test_segment_like_box_d3(self):
        # E|u1| = 1/2 in d=3, so the mean width of a thin box around a
        # length-2 segment tends to 1
        thin = Box([-1, 0, 0], [1, 1e-5, 1e-5])
        w = mean_width(thin, SphereQuadrature.mc(2_000_000, seed=2))
        assert w == pytest.approx(1.0, abs=2e-3)

    def test_grid_needs_dimension_two(self):
        with pytest.raises(ValueError, match="dimension 2"):
            mean_width(unit_ball3(), GRID)

    def test_quadrature_validation(self):
        with pytest.raises(ValueError, match="at least 8"):
            SphereQuadrature.mc(4)
        with pytest.raises(ValueError, match="kind"):
            SphereQuadrature("lattice", 100)


class TestV1:
    def test_disc_is_pi(self):
        assert v1(unit_disc(), GRID) == pytest.approx(PI, abs=1e-10)

    def test_ball3_is_four(self):
        # constant width, so even MC quadrature is exact
        assert v1(unit_ball3(), SphereQuadrature.mc(100, seed=0)) == pytest.approx(4.0, abs=1e-12)

    def test_segment_recovers_length(self):
        # thin boxes around a length-2 segment in ambient d = 2, 3, 4
        thin2 = Box([-1, 0], [1, 1e-4])
        assert v1(thin2, GRID) == pytest.approx(2.0, abs=1e-3)
        thin3 = Box([-1, 0, 0], [1, 1e-4, 1e-4])
        v = v1(thin3, SphereQuadrature.mc(30_000_000, seed=3))
        assert v == pytest.approx(2.0, abs=1e-3)
        thin4 = Box([-1, 0, 0, 0], [1, 1e-4, 1e-4, 1e-4])
        v = v1(thin4, SphereQuadrature.mc(30_000_000, seed=4))
        assert v == pytest.approx(2.0, abs=1.5e-3)

    def test_planar_identity_half_perimeter(self):
        from scipy.spatial import ConvexHull

        for body in corpus_2d():
            V = getattr(body, "vertices", None)
            if V is None:
                continue
            hull = ConvexHull(V)
            ring = V[hull.vertices]
            perimeter = float(np.linalg.norm(np.roll(ring, -1, axis=0) - ring, axis=1).sum())
            assert v1(body, GRID) == pytest.approx(perimeter / 2.0, rel=1e-3)
        assert v1(unit_square(), GRID) == pytest.approx(2.0, rel=1e-6)

    def test_homogeneity(self):
        a = v1(Ball(np.zeros(2), 1.0), GRID)
        b = v1(Ball(np.zeros(2), 3.0), GRID)
        assert b == pytest.approx(3 * a, rel=1e-12)

    def test_monotone_exceeds_diameter(self):
        # V1 is monotone and equals length on segments, so V1 >= diameter
        q3 = SphereQuadrature.mc(200_000, seed=5)
        for body in corpus_2d():
            assert v1(body, GRID) >= diameter(body) * (1 - 1e-2)
        for body in corpus_3d():
            assert v1(body, q3) >= diameter(body) * (1 - 1e-2)

    def test_with_error_grid_is_deterministic(self):
        val, se = v1_with_error(unit_square(), GRID)
        assert se == 0.0


class TestRatio:
    def test_disc(self):
        target = 128.0 / (45.0 * PI**2)
        val, se = ratio(unit_disc(), n_samples=400_000, quadrature=GRID, seed=1)
        assert abs(val - target) < 4 * se
        bc = bound_constants(2)
        assert bc.lower < val < bc.upper

    def test_equilateral_triangle(self):
        tri = RegularPolygon(3, 1.0)  # V1 = perimeter / 2 = 3 sqrt(3) / 2
        target = np.sqrt(3.0) * (0.2 + 0.15 * np.log(3.0)) / (3.0 * np.sqrt(3.0) / 2.0)
        val, se = ratio(tri, n_samples=400_000, quadrature=GRID, seed=2)
        assert abs(val - target) < 4 * se
        assert val == pytest.approx(0.243195, abs=3e-3)

    def test_thin_box_approaches_upper_bound(self):
        kp = k_prime_delta(2, 1e-3)
        val, _ = ratio(kp, n_samples=400_000, quadrature=GRID, seed=3)
        assert val == pytest.approx(1.0 / 3.0, abs=0.01)

    def test_chord_route(self):
        val, se = ratio(unit_disc(), n_samples=200_000, quadrature=GRID, seed=4, delta_method="chord")
        assert abs(val - 128.0 / (45.0 * PI**2)) < 4 * se

    def test_invalid_method(self):
        with pytest.raises(ValueError, match="delta_method"):
            ratio(unit_disc(), n_samples=1000, delta_method="exact")

    def test_theorem_band_over_corpus(self):
        bc2 = bound_constants(2)
        for body in corpus_2d():
            val, se = ratio(body, n_samples=150_000, quadrature=GRID, seed=6)
            assert bc2.lower - 3 * se < val < bc2.upper + 3 * se
        bc3 = bound_constants(3)
        q3 = SphereQuadrature.mc(100_000, seed=7)
        for body in corpus_3d():
            val, se = ratio(body, n_samples=150_000, quadrature=q3, seed=8)
            assert bc3.lower - 3 * se < val < bc3.upper + 3 * se

    def test_theorem_band_d4(self):
        from meandist import RngStream, Simplex, VPolytope

        gen = RngStream(77, 0).generator
        bodies = [
            Ball(np.zeros(4), 1.0),
            Box(np.zeros(4), np.array([1.0, 2.0, 1.0, 0.5])),
            Simplex(np.vstack([np.zeros(4), np.eye(4)]) + 0.05 * gen.standard_normal((5, 4))),
            VPolytope(gen.standard_normal((16, 4))),
        ]
        bc4 = bound_constants(4)
        q4 = SphereQuadrature.mc(100_000, seed=9)
        for body in bodies:
            val, se = ratio(body, n_samples=150_000, quadrature=q4, seed=10)
            assert bc4.lower - 3 * se < val < bc4.upper + 3 * se

import numpy as np
import pytest

from meandist import (
    AffineProfileParams,
    Ball,
    Box,
    Profile,
    RngStream,
    affine_I,
    affine_profile,
    functional_I,
    functional_I_via_H,
    h0,
    k_delta,
    lower_bound,
    maximize_I,
    minimize_I,
    normalize,
    profile_from_body,
    profile_l1_distance,
    random_profile,
    rearrange,
    uniform_profile,
    validate_profile,
)

PI = np.pi


def ramp_profile() -> Profile:
    """h(t) = (1 + t)/2 in d = 2: the r1 = 0 member of the affine family."""
    return Profile(2, [-1.0, 1.0], [0.0, 1.0], normalized=True)


class TestRepresentation:
    def test_h0_shape(self):
        p = h0(2)
        np.testing.assert_allclose(p.f_values, [0.0, 1.0, 0.0])
        assert p.h(0.0) == pytest.approx(1.0)

    def test_h0_d3_peak(self):
        assert h0(3).h(0.0) == pytest.approx(1.5, abs=1e-14)

    def test_h0_unit_mass_all_d(self):
        for d in range(2, 11):
            assert h0(d).mass == pytest.approx(1.0, abs=1e-12)

    def test_h0_requires_d_at_least_two(self):
        with pytest.raises(ValueError, match=">= 2"):
            h0(1)

    def test_structural_validation(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            Profile(2, [-1.0, 0.5, 0.5, 1.0], [0, 1, 1, 0])
        with pytest.raises(ValueError, match="start at -1"):
            Profile(2, [0.0, 1.0], [1, 1])
        with pytest.raises(ValueError, match="nonnegative"):
            Profile(2, [-1.0, 1.0], [-0.5, 1.0])

    def test_normalize(self):
        p = Profile(3, [-1.0, 0.0, 1.0], [0.0, 2.0, 0.0])
        q = normalize(p)
        assert q.normalized and q.mass == pytest.approx(1.0, abs=1e-14)


class TestValidate:
    def test_h0_passes_everything(self):
        rep = validate_profile(h0(2))
        assert rep.all_passed
        assert rep.unit_mass is not None and rep.unit_mass.defect < 1e-12

    def test_concavity_violation_detected(self):
        # middle knot dropped below the chord of its neighbours
        bad = Profile(2, [-1.0, 0.0, 1.0], [0.8, 0.3, 0.8])
        rep = validate_profile(bad)
        assert not rep.concave_root.passed
        assert rep.concave_root.defect > 0.1

    def test_interior_zero_breaks_support(self):
        flat = Profile(2, [-1.0, 0.0, 1.0], [1.0, 0.0, 1.0])
        rep = validate_profile(flat)
        assert not rep.full_support.passed

    def test_unnormalized_mass_not_applicable(self):
        p = Profile(2, [-1.0, 1.0], [1.0, 1.0])
        assert validate_profile(p).unit_mass is None

    def test_wrong_mass_flagged(self):
        p = Profile(2, [-1.0, 1.0], [1.0, 1.0], normalized=True)  # mass 2
        rep = validate_profile(p)
        assert rep.unit_mass is not None and not rep.unit_mass.passed


class TestFunctionalI:
    def test_uniform_is_one_third(self):
        for d in (2, 3, 5):
            assert functional_I(uniform_profile(d)) == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_h0_closed_form(self):
        for d in range(2, 9):
            assert functional_I(h0(d)) == pytest.approx(lower_bound(d), abs=1e-8)

    def test_ramp_value(self):
        assert functional_I(ramp_profile()) == pytest.approx(4.0 / 15.0, abs=1e-12)

    def test_requires_normalization(self):
        with pytest.raises(ValueError, match="normalized"):
            functional_I(Profile(2, [-1.0, 1.0], [1.0, 1.0]))

    def test_via_H_matches_on_named_profiles(self):
        assert functional_I_via_H(h0(2)) == pytest.approx(7.0 / 30.0, abs=1e-12)
        assert functional_I_via_H(h0(3)) == pytest.approx(5.0 / 28.0, abs=1e-12)
        assert functional_I_via_H(uniform_profile(2)) == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_via_H_rejects_odd_profiles(self):
        with pytest.raises(ValueError, match="even"):
            functional_I_via_H(ramp_profile())

    def test_via_H_agreement_random_even(self):
        for d in (2, 3, 4):
            rng = RngStream(100 + d, 0)
            for _ in range(100):
                p = random_profile(d, rng, even=True)
                assert abs(functional_I(p) - functional_I_via_H(p)) <= 1e-7

    def test_sandwich_on_random_profiles(self):
        for d in (2, 3, 4):
            rng = RngStream(200 + d, 0)
            for _ in range(100):
                p = random_profile(d, rng, even=bool(rng.generator.integers(2)))
                val = functional_I(p)
                assert lower_bound(d) - 1e-8 <= val <= 1.0 / 3.0 + 1e-8


class TestRearrange:
    def test_fixed_points(self):
        for p in (h0(2), h0(4), uniform_profile(3)):
            q = rearrange(p)
            np.testing.assert_allclose(q.knots, p.knots, atol=1e-14)
            np.testing.assert_allclose(q.f_values, p.f_values, atol=1e-14)

    def test_ramp_becomes_tent(self):
        q = rearrange(ramp_profile())
        np.testing.assert_allclose(q.knots, [-1.0, 0.0, 1.0], atol=1e-10)
        np.testing.assert_allclose(q.f_values, [0.0, 1.0, 0.0], atol=1e-10)

    def test_riesz_and_equimeasurability(self):
        for d in (2, 3):
            rng = RngStream(300 + d, 0)
            for _ in range(100):
                p = random_profile(d, rng)
                q = rearrange(p)
                assert q.mass == pytest.approx(p.mass, abs=1e-10)
                assert functional_I(p) >= functional_I(q) - 1e-8
                assert validate_profile(q).concave_root.passed

    def test_idempotence(self):
        rng = RngStream(400, 0)
        for _ in range(50):
            p = random_profile(2, rng)
            q = rearrange(p)
            r = rearrange(q)
            np.testing.assert_allclose(r.knots, q.knots, atol=1e-12)
            np.testing.assert_allclose(r.f_values, q.f_values, atol=1e-12)

    def test_rejects_nonconcave(self):
        bad = Profile(2, [-1.0, 0.0, 1.0], [0.8, 0.3, 0.8])
        with pytest.raises(ValueError, match="concave"):
            rearrange(bad)


class TestAffineFamily:
    def test_boundary_uniform(self):
        assert affine_I(AffineProfileParams(2, 0.0, 1.0)) == 1.0 / 3.0
        assert affine_I(AffineProfileParams(7, 0.0, 0.3)) == 1.0 / 3.0

    def test_boundary_ramp(self):
        for d in (2, 3, 6):
            target = 2.0 * d / ((d + 1) * (2 * d + 1))
            assert affine_I(AffineProfileParams(d, 1.0, 1.0)) == target
        assert affine_I(AffineProfileParams(2, 1.0, 1.0)) == pytest.approx(4.0 / 15.0)

    def test_quadrature_cross_check(self):
        for d in (2, 3):
            for p in (0.3, 1.0, 7.0):
                params = AffineProfileParams.from_p(d, p)
                closed = affine_I(params)
                quad = functional_I(affine_profile(params))
                assert closed == pytest.approx(quad, abs=1e-7)

    def test_strictly_below_one_third_on_log_grid(self):
        grid = np.logspace(-3, 3, 61)
        for d in range(2, 9):
            vals = [affine_I(AffineProfileParams.from_p(d, p)) for p in grid]
            assert max(vals) < 1.0 / 3.0

    def test_approaches_one_third(self):
        for d in range(2, 9):
            v = affine_I(AffineProfileParams.from_p(d, 1e-3))
            assert abs(v - 1.0 / 3.0) < 1e-4

    def test_tiny_p_fallback_is_stable(self):
        for d in (2, 5, 8):
            v = affine_I(AffineProfileParams.from_p(d, 5e-5))
            assert 1.0 / 3.0 - 1e-6 < v <= 1.0 / 3.0

    def test_parameter_validation(self):
        with pytest.raises(ValueError, match="slope"):
            AffineProfileParams(2, -0.1, 1.0)
        with pytest.raises(ValueError, match="b >= a"):
            AffineProfileParams(2, 1.0, 0.5)
        with pytest.raises(ValueError, match="positive"):
            AffineProfileParams.from_p(2, 0.0)

    def test_ramp_profile_is_family_member(self):
        assert functional_I(ramp_profile()) == pytest.approx(
            affine_I(AffineProfileParams(2, 1.0, 1.0)), abs=1e-12
        )


class TestProfileFromBody:
    def test_box_gives_uniform(self):
        p = profile_from_body(Box([0.0, 0.0], [1.0, 1.0]), [1.0, 0.0], 9)
        np.testing.assert_allclose(p.f_values, 0.5, atol=1e-12)
        assert functional_I(p) == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_disc_profile_matches_semicircle_density(self):
        p = profile_from_body(Ball(np.zeros(2), 1.0), [1.0, 0.0], 401)
        t = np.linspace(-0.95, 0.95, 101)
        np.testing.assert_allclose(p.h(t), (2.0 / PI) * np.sqrt(1 - t * t), atol=2e-3)

    def test_disc_body_consistency(self):
        # E|P_u X1 - P_u X2| = |P_u K| I(h) pins I for the disc
        p = profile_from_body(Ball(np.zeros(2), 1.0), [1.0, 0.0], 801)
        assert functional_I(p) == pytest.approx(128.0 / (45.0 * PI**2), abs=2e-3)

    def test_k_delta_profile_is_tent(self):
        p = profile_from_body(k_delta(2, 0.25), [1.0, 0.0], 17)
        assert profile_l1_distance(p, h0(2)) < 1e-10

    def test_ball3_profile(self):
        p = profile_from_body(Ball(np.zeros(3), 1.0), [1.0, 0.0, 0.0], 201, n_inner=40_000)
        assert validate_profile(p).all_passed
        # Delta(B3) = 36/35 and V1 = 4 pin I = (36/35) / 4 / (1/2) / 2 = 9/35
        assert functional_I(p) == pytest.approx(9.0 / 35.0, abs=5e-3)

    def test_knot_count_validation(self):
        with pytest.raises(ValueError, match="3 knots"):
            profile_from_body(Ball(np.zeros(2), 1.0), [1.0, 0.0], 2)


class TestOptimizers:
    def test_maximize_reaches_uniform(self):
        for d in (2, 3):
            prof, val = maximize_I(d, 9, 5000, seed=0)
            assert 1.0 / 3.0 - 1e-3 <= val <= 1.0 / 3.0 + 1e-12
            t, f = prof.knots, prof.f_values
            A = np.stack([np.ones_like(t), t], axis=1)
            coef, *_ = np.linalg.lstsq(A, f, rcond=None)
            assert np.abs(f - A @ coef).max() <= 1e-2

    def test_minimize_reaches_h0(self):
        for d in (2, 3):
            prof, val = minimize_I(d, 9, 5000, seed=0)
            assert abs(val - lower_bound(d)) <= 1e-3
            assert profile_l1_distance(prof, h0(d)) <= 5e-2

    def test_seed_robustness(self):
        vals = [maximize_I(2, 9, 4000, seed=s)[1] for s in (0, 1, 2)]
        assert max(vals) - min(vals) <= 1e-3
        vals = [minimize_I(2, 9, 4000, seed=s)[1] for s in (0, 1, 2)]
        assert max(vals) - min(vals) <= 1e-3

    def test_tent_is_fixed_point_of_descent(self):
        prof, val = minimize_I(2, 3, 300, seed=0, init=h0(2))
        assert val == pytest.approx(7.0 / 30.0, abs=1e-12)
        np.testing.assert_allclose(prof.f_values, [0.0, 1.0, 0.0], atol=1e-12)

    def test_budget_validation(self):
        with pytest.raises(ValueError, match="3 knots"):
            maximize_I(2, 2, 10)
        with pytest.raises(ValueError, match="iteration"):
            minimize_I(2, 9, 0)


class TestRandomProfiles:
    def test_random_profiles_are_admissible(self):
        for d in (2, 3, 5):
            rng = RngStream(500 + d, 0)
            for _ in range(50):
                p = random_profile(d, rng, even=bool(rng.generator.integers(2)))
                assert validate_profile(p).all_passed

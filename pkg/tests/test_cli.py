import json

import numpy as np
import pytest

from meandist import RngStream, sample_directions
from meandist.cli import main, parse_body_spec, serialize_body


def write_body(tmp_path, spec, name="body.json"):
    path = tmp_path / name
    path.write_text(json.dumps(spec))
    return str(path)


DISC = {"kind": "ball", "center": [0.0, 0.0], "radius": 1.0}


class TestBodySpecs:
    def test_parse_all_kinds(self):
        specs = [
            DISC,
            {"kind": "ellipsoid", "center": [0, 0, 0], "semi_axes": [1, 2, 0.5]},
            {"kind": "box", "lower": [0, 0], "upper": [1, 2]},
            {"kind": "simplex", "vertices": [[0, 0], [1, 0], [0, 1]]},
            {"kind": "vpolytope", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
            {"kind": "regular_polygon", "n": 6, "circumradius": 1.0},
        ]
        for spec in specs:
            body = parse_body_spec(json.dumps(spec))
            assert body.dim in (2, 3)

    def test_k_delta_routes_to_constructor(self):
        body = parse_body_spec({"kind": "k_delta", "d": 2, "delta": 0.5})
        np.testing.assert_allclose(body.vertices, [[1, 0], [-1, 0], [0, 0.5]])
        kp = parse_body_spec({"kind": "k_prime_delta", "d": 3, "delta": 0.01})
        np.testing.assert_allclose(kp.upper, [1, 0.01, 0.01])

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown kind"):
            parse_body_spec({"kind": "torus"})

    def test_degenerate_box_names_invariant(self):
        with pytest.raises(ValueError, match="degenerate"):
            parse_body_spec({"kind": "box", "lower": [0, 0], "upper": [0, 1]})

    def test_missing_field_named(self):
        with pytest.raises(ValueError, match="radius"):
            parse_body_spec({"kind": "ball", "center": [0, 0]})

    def test_round_trip_support_equality(self):
        specs = [
            DISC,
            {"kind": "ellipsoid", "center": [0.5, -1.0], "semi_axes": [1, 2]},
            {"kind": "box", "lower": [0, 0, 0], "upper": [1, 2, 3]},
            {"kind": "simplex", "vertices": [[0, 0], [1, 0.2], [0.1, 1]]},
            {"kind": "vpolytope", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 1.4]]},
            {"kind": "regular_polygon", "n": 5, "circumradius": 2.0},
        ]
        for spec in specs:
            body = parse_body_spec(spec)
            clone = parse_body_spec(serialize_body(body))
            U = sample_directions(body.dim, 1000, RngStream(31, 0))
            np.testing.assert_allclose(
                body.support_many(U), clone.support_many(U), rtol=0, atol=1e-12
            )


class TestSubcommands:
    def test_delta_exact_disc(self, tmp_path, capsys):
        path = write_body(tmp_path, DISC)
        assert main(["delta", "--body", path, "--method", "exact"]) == 0
        out = capsys.readouterr().out
        # 128/(45 pi) = 0.9054147873672..., 12 significant digits
        assert "0.905414787367" in out

    def test_delta_mc_json_schema(self, tmp_path, capsys):
        path = write_body(tmp_path, DISC)
        rc = main(["delta", "--body", path, "--samples", "20000", "--threads", "1", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert set(payload) == {"value", "std_error", "n", "method", "seed", "target", "config"}
        assert payload["method"] == "mc_pairs"
        assert payload["n"] == 20000

    def test_delta_chord(self, tmp_path, capsys):
        path = write_body(tmp_path, DISC)
        rc = main(["delta", "--body", path, "--method", "chord", "--samples", "64000", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["method"] == "chord"
        assert abs(payload["value"] - 0.9054) < 0.05

    def test_delta_exact_unavailable_is_input_error(self, tmp_path, capsys):
        path = write_body(tmp_path, {"kind": "regular_polygon", "n": 5, "circumradius": 1.0})
        assert main(["delta", "--body", path, "--method", "exact"]) == 2
        assert "error" in capsys.readouterr().err

    def test_v1_grid_square(self, tmp_path, capsys):
        path = write_body(tmp_path, {"kind": "box", "lower": [0, 0], "upper": [1, 1]})
        rc = main(["v1", "--body", path, "--dirs", "7200", "--grid", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["value"] - 2.0) < 1e-5

    def test_ratio_disc(self, tmp_path, capsys):
        path = write_body(tmp_path, DISC)
        rc = main(["ratio", "--body", path, "--samples", "50000", "--dirs", "3600", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["value"] - 0.288203) < 0.01
        assert payload["lower"] == pytest.approx(7 / 30)

    def test_sylvester_square(self, tmp_path, capsys):
        path = write_body(tmp_path, {"kind": "box", "lower": [0, 0], "upper": [1, 1]})
        rc = main(["sylvester", "--body", path, "--samples", "50000", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert set(payload) == {"value", "std_error", "n", "method", "seed", "config"}
        assert abs(payload["value"] - 11 / 36) < 0.02

    def test_profile_ops(self, tmp_path, capsys):
        path = write_body(tmp_path, DISC)
        rc = main(["profile", "--body", path, "--direction", "1,0", "--op", "I",
                   "--knots", "201", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["value"] - 0.288203) < 0.01

        rc = main(["profile", "--body", path, "--direction", "0,1", "--op", "extract", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert set(payload["profile"]) == {"d", "knots", "f"}

        rc = main(["profile", "--body", path, "--direction", "1,0", "--op", "rearrange", "--json"])
        assert rc == 0

    def test_optimize_max(self, capsys):
        rc = main(["optimize-I", "--d", "2", "--mode", "max", "--knots", "9",
                   "--iters", "2000", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["value"] - 1 / 3) < 1e-3
        assert payload["sup_affine_deviation"] < 1e-2

    def test_optimize_min(self, capsys):
        rc = main(["optimize-I", "--d", "3", "--mode", "min", "--knots", "9",
                   "--iters", "2000", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["value"] - payload["target"]) < 1e-3
        assert payload["l1_distance_to_h0"] < 5e-2


class TestVerifySuites:
    def test_bounds_suite_passes(self, tmp_path, capsys):
        report = tmp_path / "bounds.csv"
        rc = main(["verify", "--suite", "bounds", "--d", "2,3,4,5,6", "--report", str(report)])
        assert rc == 0
        header = report.read_text().splitlines()[0]
        assert header == "suite,d,delta,quantity,estimate,std_error,target,pass"

    def test_profiles_suite_passes(self, capsys):
        rc = main(["verify", "--suite", "profiles", "--d", "2,3"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "all checks passed" in out

    def test_extremal_suite_quick(self, tmp_path, capsys):
        report = tmp_path / "ext.csv"
        rc = main(["verify", "--suite", "extremal", "--d", "2", "--deltas", "0.1,0.01",
                   "--samples", "100000", "--report", str(report)])
        assert rc == 0
        lines = report.read_text().splitlines()
        assert len(lines) == 1 + 2 * 4  # header + 4 quantities per delta


class TestErrorPaths:
    def test_missing_file_exit_2(self, capsys):
        assert main(["delta", "--body", "/nonexistent.json"]) == 2

    def test_bad_spec_exit_2(self, tmp_path, capsys):
        path = write_body(tmp_path, {"kind": "box", "lower": [0, 0], "upper": [0, 1]})
        assert main(["delta", "--body", path]) == 2
        assert "degenerate" in capsys.readouterr().err

    def test_thin_body_estimator_error_exit_2(self, tmp_path, capsys):
        sliver = {
            "kind": "vpolytope",
            "vertices": [[0.0, 0.0], [1.0, 1.0], [0.5, 0.5 + 1e-9]],
        }
        path = write_body(tmp_path, sliver)
        assert main(["delta", "--body", path, "--samples", "1000"]) == 2
        assert "chord" in capsys.readouterr().err

    def test_threads_env_override(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("MEANDIST_THREADS", "2")
        path = write_body(tmp_path, DISC)
        rc = main(["delta", "--body", path, "--samples", "10000", "--threads", "7", "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["config"]["threads"] == 2

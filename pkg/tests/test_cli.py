import csv
import json

import numpy as np
import pytest

from momentcoords.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_wachspress_fixture(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--geometry", "conv-quad", "--point", "0.5,1", "--method", "wachspress"
        )
        assert code == 0
        record = json.loads(out)
        assert record["method"] == "wachspress"
        assert np.abs(np.array(record["weights"]) - [0.3, 0.4, 0.2, 0.1]).max() <= 1e-12

    def test_biunit_moment_center(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--geometry", "biunit-square", "--point", "0,0", "--method", "moment"
        )
        assert code == 0
        assert json.loads(out)["weights"] == [0.25, 0.25, 0.25, 0.25]

    def test_hex_vertex_kronecker(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--geometry", "conv-hex", "--point", "1,2,1", "--method", "moment"
        )
        assert code == 0
        record = json.loads(out)
        assert record["weights"] == [1, 0, 0, 0, 0, 0, 0, 0]
        assert record["frame"] is None

    def test_hex_interior_reports_frame(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--geometry", "conv-hex", "--point", "0,0.5,0", "--method", "moment"
        )
        assert code == 0
        record = json.loads(out)
        assert set(record["frame"]) == {"r1", "r2", "r3"}
        for key in ("r1", "r2", "r3"):
            assert np.linalg.norm(record["frame"][key]) == pytest.approx(1.0)

    def test_seventeen_digit_output(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--geometry", "conv-quad", "--point", "0.3,0.7", "--method", "moment"
        )
        assert code == 0
        weights = json.loads(out)["weights"]
        assert abs(sum(weights) - 1.0) < 1e-15  # round trips at full precision

    def test_exterior_point_domain_error(self, capsys):
        code, _, err = run(
            capsys, "eval", "--geometry", "nonconv-quad", "--point", "1.6,2", "--method", "moment"
        )
        assert code == 3 and "domain error" in err

    def test_wachspress_on_nonconvex_domain_error(self, capsys):
        code, _, err = run(
            capsys, "eval", "--geometry", "nonconv-quad", "--point", "0.9,1.5", "--method", "wachspress"
        )
        assert code == 3

    def test_mvc_oracle_on_boundary_domain_error(self, capsys):
        code, _, err = run(
            capsys, "eval", "--geometry", "biunit-square", "--point", "1,0", "--method", "mvc-oracle"
        )
        assert code == 3

    def test_unknown_method_input_error(self, capsys):
        code, _, err = run(
            capsys, "eval", "--geometry", "biunit-square", "--point", "0,0", "--method", "trilinear"
        )
        assert code == 2 and "error" in err

    def test_bad_point_input_error(self, capsys):
        code, _, _ = run(
            capsys, "eval", "--geometry", "biunit-square", "--point", "0,zebra", "--method", "moment"
        )
        assert code == 2

    def test_wrong_dimension_input_error(self, capsys):
        code, _, _ = run(
            capsys, "eval", "--geometry", "biunit-square", "--point", "0,0,0", "--method", "moment"
        )
        assert code == 2

    def test_missing_file_input_error(self, capsys):
        code, _, _ = run(
            capsys, "eval", "--geometry", "/nope/missing.json", "--point", "0,0", "--method", "moment"
        )
        assert code == 2

    def test_geometry_file_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "quad.json"
        path.write_text(json.dumps({"kind": "quad", "vertices": [[0, 0], [2, 0], [2, 2], [0, 2]]}))
        code, out, _ = run(
            capsys, "eval", "--geometry", str(path), "--point", "1,1", "--method", "moment"
        )
        assert code == 0
        assert json.loads(out)["weights"] == [0.25, 0.25, 0.25, 0.25]

    def test_invalid_geometry_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"kind": "quad", "vertices": [[0, 0], [1, 1], [1, 0], [0, 1]]}))
        code, _, _ = run(capsys, "eval", "--geometry", str(path), "--point", "0.5,0.5", "--method", "moment")
        assert code == 2

    def test_interval_methods(self, capsys, tmp_path):
        path = tmp_path / "iv.json"
        path.write_text(json.dumps({"kind": "interval", "nodes": [0, 0.4, 1]}))
        code, out, _ = run(capsys, "eval", "--geometry", str(path), "--point", "0.2", "--method", "hat")
        assert code == 0
        assert json.loads(out)["weights"] == [0.5, 0.5, 0]
        code, out, _ = run(capsys, "eval", "--geometry", str(path), "--point", "0.2", "--method", "moment")
        assert code == 0
        assert np.allclose(json.loads(out)["weights"], [0.5, 0.5, 0])


class TestGrid:
    def test_biunit_three_by_three(self, capsys, tmp_path):
        out_path = tmp_path / "grid.csv"
        code, _, _ = run(
            capsys, "grid", "--geometry", "biunit-square", "--resolution", "3",
            "--method", "moment", "--out", str(out_path),
        )
        assert code == 0
        with open(out_path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 9
        center = [r for r in rows if float(r["x"]) == 0 and float(r["y"]) == 0][0]
        assert [float(center[f"phi{i}"]) for i in (1, 2, 3, 4)] == [0.25] * 4

    def test_rows_only_inside(self, capsys, tmp_path):
        out_path = tmp_path / "grid.csv"
        code, _, _ = run(
            capsys, "grid", "--geometry", "nonconv-quad", "--resolution", "21",
            "--method", "moment", "--out", str(out_path),
        )
        assert code == 0
        with open(out_path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert 0 < len(rows) < 21 * 21
        mins = min(float(r[f"phi{i}"]) for r in rows for i in (1, 2, 3, 4))
        assert mins >= -1e-10

    def test_byte_stable(self, capsys, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            code, _, _ = run(
                capsys, "grid", "--geometry", "conv-quad", "--resolution", "7",
                "--method", "wachspress", "--out", str(p),
            )
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_lf_line_endings(self, capsys, tmp_path):
        out_path = tmp_path / "grid.csv"
        run(
            capsys, "grid", "--geometry", "biunit-square", "--resolution", "3",
            "--method", "moment", "--out", str(out_path),
        )
        data = out_path.read_bytes()
        assert b"\r" not in data and data.endswith(b"\n")

    def test_derivative_columns(self, capsys, tmp_path):
        out_path = tmp_path / "grid.csv"
        code, _, _ = run(
            capsys, "grid", "--geometry", "conv-quad", "--resolution", "9",
            "--method", "moment", "--derivatives", "--out", str(out_path),
        )
        assert code == 0
        with open(out_path, newline="") as fh:
            reader = csv.DictReader(fh)
            assert "dphi1_dx" in reader.fieldnames and "dphi4_dy" in reader.fieldnames
            for row in reader:
                if any(row[k] == "" for k in reader.fieldnames):
                    continue
                sx = sum(float(row[f"dphi{i}_dx"]) for i in (1, 2, 3, 4))
                sy = sum(float(row[f"dphi{i}_dy"]) for i in (1, 2, 3, 4))
                assert abs(sx) <= 1e-6 and abs(sy) <= 1e-6

    def test_interval_grid(self, capsys, tmp_path):
        geom = tmp_path / "iv.json"
        geom.write_text(json.dumps({"kind": "interval", "nodes": [0, 0.25, 0.5, 1]}))
        out_path = tmp_path / "grid.csv"
        code, _, _ = run(
            capsys, "grid", "--geometry", str(geom), "--resolution", "5",
            "--method", "hat", "--out", str(out_path),
        )
        assert code == 0
        with open(out_path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 5
        assert [float(v) for v in rows[0].values()] == [0.0, 1.0, 0.0, 0.0, 0.0]

    def test_bad_resolution(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "grid", "--geometry", "biunit-square", "--resolution", "1",
            "--method", "moment", "--out", str(tmp_path / "g.csv"),
        )
        assert code == 2


class TestCheck:
    def test_convex_quad_passes(self, capsys):
        code, out, _ = run(capsys, "check", "--geometry", "conv-quad", "--samples", "120")
        assert code == 0
        assert "FAIL" not in out and "PASS" in out

    def test_nonconvex_quad_passes(self, capsys):
        code, out, _ = run(capsys, "check", "--geometry", "nonconv-quad", "--samples", "120")
        assert code == 0

    def test_hex_passes(self, capsys):
        code, out, _ = run(capsys, "check", "--geometry", "conv-hex", "--samples", "120")
        assert code == 0
        assert "facet reduction" in out

    def test_wachspress_on_nonconvex_refused(self, capsys):
        code, _, err = run(
            capsys, "check", "--geometry", "nonconv-quad", "--method", "wachspress"
        )
        assert code == 3 and "domain error" in err

    def test_method_restricts_suite(self, capsys):
        code, out, _ = run(
            capsys, "check", "--geometry", "conv-quad", "--samples", "60",
            "--method", "wachspress",
        )
        assert code == 0
        assert "wachspress" in out and "moment" not in out

    def test_deterministic_for_seed(self, capsys):
        _, out1, _ = run(capsys, "check", "--geometry", "conv-quad", "--samples", "60", "--seed", "9")
        _, out2, _ = run(capsys, "check", "--geometry", "conv-quad", "--samples", "60", "--seed", "9")
        assert out1 == out2

    def test_interval_geometry(self, capsys, tmp_path):
        geom = tmp_path / "iv.json"
        geom.write_text(json.dumps({"kind": "interval", "nodes": [0, 0.3, 0.6, 1]}))
        code, out, _ = run(capsys, "check", "--geometry", str(geom), "--samples", "200")
        assert code == 0
        assert "hat oracle" in out

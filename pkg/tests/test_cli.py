import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from spectral_ellipse import cli
from spectral_ellipse.ensembles import EnsembleSpec, generate
from spectral_ellipse.matrixio import NonSquare, ParseError, load_matrix, parse_json_matrix, parse_mtx
from spectral_ellipse.numerics import NonConvergence
from spectral_ellipse.report import canonical_json, fmt_float

SRC = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src")


def write_json_matrix(path, entries, n):
    payload = {"n": n, "entries": entries}
    path.write_text(json.dumps(payload))
    return str(path)


def diag13_file(tmp_path):
    return write_json_matrix(tmp_path / "diag13.json", [[1, 0], [0, 0], [0, 0], [3, 0]], 2)


def run_cli(args, **kwargs):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run(
        [sys.executable, "-m", "spectral_ellipse", *args],
        capture_output=True,
        text=True,
        env=env,
        **kwargs,
    )


class TestMatrixMarketParsing:
    def test_array_real_is_column_major(self):
        text = "%%MatrixMarket matrix array real general\n2 2\n1\n3\n2\n4\n"
        a = parse_mtx(text)
        assert np.array_equal(a, np.array([[1, 2], [3, 4]], dtype=complex))

    def test_array_complex(self):
        text = "%%MatrixMarket matrix array complex general\n% comment\n1 1\n2.5 -1.5\n"
        a = parse_mtx(text)
        assert a[0, 0] == 2.5 - 1.5j

    def test_coordinate_complex_duplicates_accumulate(self):
        text = (
            "%%MatrixMarket matrix coordinate complex general\n"
            "2 2 3\n1 2 1 0\n2 1 1 0\n1 2 0 2\n"
        )
        a = parse_mtx(text)
        assert a[0, 1] == 1 + 2j
        assert a[1, 0] == 1

    def test_rejects_symmetric(self):
        with pytest.raises(ParseError):
            parse_mtx("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n")

    def test_rejects_pattern_field(self):
        with pytest.raises(ParseError):
            parse_mtx("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n")

    def test_rejects_integer_field(self):
        with pytest.raises(ParseError):
            parse_mtx("%%MatrixMarket matrix array integer general\n1 1\n7\n")

    def test_rectangular_is_non_square(self):
        with pytest.raises(NonSquare):
            parse_mtx("%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n")

    def test_bad_token_count(self):
        with pytest.raises(ParseError):
            parse_mtx("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n")

    def test_out_of_range_coordinate(self):
        with pytest.raises(ParseError):
            parse_mtx("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 5\n")

    def test_non_finite_rejected(self):
        with pytest.raises(ParseError):
            parse_mtx("%%MatrixMarket matrix array real general\n1 1\nnan\n")


class TestJsonParsing:
    def test_round_trip(self):
        a = parse_json_matrix('{"n": 2, "entries": [[1,0],[0,0],[0,0],[3,0]]}')
        assert np.array_equal(a, np.diag([1, 3]).astype(complex))

    def test_wrong_count(self):
        with pytest.raises(ParseError):
            parse_json_matrix('{"n": 2, "entries": [[1,0]]}')

    def test_bad_n(self):
        with pytest.raises(ParseError):
            parse_json_matrix('{"n": true, "entries": []}')

    def test_bad_pair(self):
        with pytest.raises(ParseError):
            parse_json_matrix('{"n": 1, "entries": [[1]]}')

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            parse_json_matrix("{nope")

    def test_load_matrix_unknown_extension(self, tmp_path):
        p = tmp_path / "m.txt"
        p.write_text("x")
        with pytest.raises(ParseError):
            load_matrix(str(p))

    def test_load_matrix_format_override(self, tmp_path):
        p = tmp_path / "m.txt"
        p.write_text('{"n": 1, "entries": [[5, 0]]}')
        a = load_matrix(str(p), fmt="json")
        assert a[0, 0] == 5


class TestCanonicalJson:
    def test_floats_round_trip(self):
        for x in (1 / 3, 0.1, -2.5e-300, 7.0, math.pi):
            assert float(fmt_float(x)) == x

    def test_deterministic_bytes(self):
        obj = {"a": 1.5, "b": [1, 2.25, None, True], "c": {"d": "x\"y"}}
        assert canonical_json(obj) == canonical_json(obj)

    def test_parses_as_json(self):
        obj = {"a": 1 / 3, "b": [0.1, -0.0], "s": 'quote"backslash\\'}
        parsed = json.loads(canonical_json(obj))
        assert parsed["a"] == 1 / 3
        assert parsed["s"] == 'quote"backslash\\'


class TestAnalyze:
    def test_diag13_report(self, tmp_path, capsys):
        path = diag13_file(tmp_path)
        rc = cli.main(["analyze", path])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["schema"] == "spectral-ellipse/1"
        assert report["n"] == 2
        assert report["gamma"] == {"re": 2, "im": 0}
        assert report["containment"]["verdict"] == "Contained"
        foci = sorted(f["re"] for f in report["ellipse"]["foci"])
        assert abs(foci[0] - 1) < 1e-9 and abs(foci[1] - 3) < 1e-9
        assert abs(report["bounds"]["trace_only_lower"] - 3) < 1e-12
        eigs = report["eigenvalues"]
        assert eigs == sorted(eigs, key=lambda e: (e["re"], e["im"]))

    def test_one_by_one_reports_note(self, tmp_path, capsys):
        path = write_json_matrix(tmp_path / "one.json", [[5, 0]], 1)
        rc = cli.main(["analyze", path])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["ellipse"] is None
        assert report["containment"] is None
        assert report["note"] == "dimension < 2"
        assert report["bounds"]["trace_only_lower"] is None
        assert report["bounds"]["observed_spectral_radius"] == 5

    def test_extremal_family_matrix(self, tmp_path, capsys):
        # the repeated eigenvalue -1 is recovered only to the multiple-root
        # noise level (~1e-10 here), which straddles the segment-collapse
        # threshold: the hull may come back as [-1, 2] (margin 1 - sqrt(3)/2)
        # or as a sliver triangle whose short-edge margin is ~0; containment
        # holds either way
        a = generate(EnsembleSpec("RemarkExtremal", 3, 99))
        entries = [[v.real, v.imag] for v in np.asarray(a).ravel()]
        path = write_json_matrix(tmp_path / "remark.json", entries, 3)
        rc = cli.main(["analyze", path])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["containment"]["verdict"] == "Contained"
        margin = report["containment"]["min_margin"]
        assert -1e-8 <= margin <= (1 - math.sqrt(3) / 2) + 1e-3
        assert abs(report["ellipse"]["semimajor"] - math.sqrt(3) / 2) < 1e-4
        # the exact reference spectrum reproduces the idealized margin
        from spectral_ellipse.ellipse import inscribed_ellipse
        from spectral_ellipse.hull import contains_ellipse, convex_hull

        ideal = contains_ellipse(
            convex_hull((-1, -1, 2)), inscribed_ellipse((-1, -1, 2), 6, 3), 1e-11
        )
        assert abs(ideal.min_margin - (1 - math.sqrt(3) / 2)) < 1e-12

    def test_byte_identical_runs(self, tmp_path):
        path = diag13_file(tmp_path)
        first = run_cli(["analyze", path])
        second = run_cli(["analyze", path])
        assert first.returncode == 0
        assert first.stdout == second.stdout
        assert len(first.stdout) > 100

    def test_json_and_svg_outputs(self, tmp_path, capsys):
        path = diag13_file(tmp_path)
        out_json = tmp_path / "report.json"
        out_svg = tmp_path / "plot.svg"
        rc = cli.main(["analyze", path, "--json", str(out_json), "--svg", str(out_svg)])
        assert rc == 0
        stdout = capsys.readouterr().out
        assert out_json.read_text() == stdout
        svg = out_svg.read_text()
        assert svg.startswith('<?xml version="1.0"')
        assert svg.count("<circle") >= 2  # spectrum dots
        assert svg.count("<path") == 1  # the ellipse
        assert svg.count("<line") >= 4  # foci crosses (and segment hull)
        assert 'width="800"' in svg and 'height="800"' in svg

    def test_svg_deterministic(self, tmp_path):
        a = generate(EnsembleSpec("Ginibre", 5, 3))
        entries = [[v.real, v.imag] for v in np.asarray(a).ravel()]
        path = write_json_matrix(tmp_path / "g.json", entries, 5)
        svg1 = tmp_path / "a.svg"
        svg2 = tmp_path / "b.svg"
        assert cli.main(["analyze", path, "--svg", str(svg1)]) == 0
        assert cli.main(["analyze", path, "--svg", str(svg2)]) == 0
        assert svg1.read_text() == svg2.read_text()
        assert "<polygon" in svg1.read_text()


class TestExitCodes:
    def test_parse_error_is_1(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{broken")
        assert cli.main(["analyze", str(p)]) == 1

    def test_missing_file_is_1(self, tmp_path):
        assert cli.main(["analyze", str(tmp_path / "missing.json")]) == 1

    def test_non_square_is_2(self, tmp_path):
        p = tmp_path / "rect.mtx"
        p.write_text("%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n")
        assert cli.main(["analyze", str(p)]) == 2

    def test_non_convergence_is_3(self, tmp_path, monkeypatch):
        path = diag13_file(tmp_path)

        def explode(a, tol):
            raise NonConvergence("stuck", (1.0,))

        monkeypatch.setattr(cli.sp, "eigenvalues", explode)
        assert cli.main(["analyze", path]) == 3

    def test_moment_mismatch_is_4(self, tmp_path):
        # golden-ratio matrix has tiny but nonzero residuals; tol 0 rejects
        path = write_json_matrix(tmp_path / "g.json", [[0, 0], [1, 0], [1, 0], [1, 0]], 2)
        assert cli.main(["analyze", path, "--tol", "0"]) == 4


class TestVerify:
    def test_contained_campaign(self, tmp_path, capsys):
        csv_path = tmp_path / "out.csv"
        rc = cli.main(
            ["verify", "--ensemble", "Ginibre", "-n", "4", "--trials", "5",
             "--seed", "42", "--csv", str(csv_path)]
        )
        assert rc == 0
        summary = capsys.readouterr().out
        assert "5/5 contained" in summary
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "seed,n,q_abs,a,b,min_margin,sweep_min,verdict"
        assert len(lines) == 6
        assert all(line.endswith("Contained") for line in lines[1:])

    def test_csv_byte_identical(self, tmp_path):
        args = ["verify", "--ensemble", "PrescribedSpectrum", "-n", "3",
                "--trials", "4", "--seed", "7", "--csv"]
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        r1 = run_cli(args + [str(p1)])
        r2 = run_cli(args + [str(p2)])
        assert r1.returncode == 0 and r2.returncode == 0
        assert p1.read_text() == p2.read_text()

    def test_moment_mismatch_rows_recorded_and_skipped(self, tmp_path, capsys):
        csv_path = tmp_path / "mm.csv"
        rc = cli.main(
            ["verify", "--ensemble", "Ginibre", "-n", "4", "--trials", "3",
             "--seed", "1", "--tol", "0", "--csv", str(csv_path)]
        )
        # no Violated rows, so still exit 0
        assert rc == 0
        summary = capsys.readouterr().out
        assert "3 moment-mismatch skipped" in summary
        rows = csv_path.read_text().splitlines()[1:]
        assert all(row.endswith("MomentMismatch") for row in rows)
        assert all(row.split(",")[2] == "" for row in rows)

    def test_csv_to_stdout_without_path(self, capsys):
        rc = cli.main(["verify", "--ensemble", "Nilpotent", "-n", "3", "--trials", "2", "--seed", "5"])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.startswith("seed,n,q_abs")

    def test_extremal_family_campaign(self):
        # all contained at n = 16; the repeated eigenvalue is only resolvable
        # to the multiple-root noise radius there, so the flat reference
        # shape (b = 0) is asserted at a dimension the pipeline can resolve
        records = cli.run_verify("RemarkExtremal", 16, 5, 3, cli.PipelineSettings())
        assert all(r.verdict == "Contained" for r in records)
        records4 = cli.run_verify("RemarkExtremal", 4, 5, 3, cli.PipelineSettings())
        assert all(r.verdict == "Contained" for r in records4)
        assert all(r.semiminor <= 1e-3 for r in records4)

    def test_nilpotent_campaign_near_point_ellipses(self):
        records = cli.run_verify("Nilpotent", 6, 10, 1, cli.PipelineSettings())
        assert all(r.verdict == "Contained" for r in records)
        assert all(r.semimajor <= 1e-2 for r in records)

    def test_trial_seeds_derived_from_counter(self, tmp_path):
        from spectral_ellipse.ensembles import counter_value

        records = cli.run_verify("Ginibre", 3, 3, 11, cli.PipelineSettings())
        assert [r.seed for r in records] == [counter_value(11, t) for t in range(3)]

    def test_violated_row_forces_nonzero_exit(self, tmp_path, monkeypatch):
        violated = cli.TrialRecord(1, 2, 0.0, 1.0, 0.0, -0.5, -0.5, "Violated")

        monkeypatch.setattr(cli, "run_trial", lambda *a, **k: violated)
        csv_path = tmp_path / "v.csv"
        rc = cli.main(
            ["verify", "--ensemble", "Ginibre", "-n", "2", "--trials", "2",
             "--csv", str(csv_path)]
        )
        assert rc != 0
        assert "Violated" in csv_path.read_text()


class TestTightness:
    def test_table_values(self, capsys):
        rc = cli.main(["tightness", "10"])
        assert rc == 0
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0].split() == ["n", "sqrt_Q", "semimajor_a", "hull", "left_margin"]
        row2 = lines[1].split()
        assert row2[0] == "2" and float(row2[1]) == math.sqrt(2) and float(row2[2]) == 1
        row3 = lines[2].split()
        assert abs(float(row3[1]) - math.sqrt(6)) < 1e-15
        assert abs(float(row3[2]) - math.sqrt(3) / 2) < 1e-15
        row10 = lines[9].split()
        assert abs(float(row10[2]) - math.sqrt(10 / 18)) < 1e-15

    def test_rows_api(self):
        rows = cli.tightness_rows(4)
        assert [r["n"] for r in rows] == [2, 3, 4]
        assert rows[0]["left_margin"] == 0
        with pytest.raises(ValueError):
            cli.tightness_rows(1)


class TestBound:
    def test_diag13(self, tmp_path, capsys):
        path = diag13_file(tmp_path)
        rc = cli.main(["bound", path])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["trace_only_lower"] == 3
        foci = sorted(f["re"] for f in report["foci"])
        assert foci == [1, 3]

    def test_identity4(self, tmp_path, capsys):
        entries = [[1.0 if i == j else 0.0, 0.0] for i in range(4) for j in range(4)]
        path = write_json_matrix(tmp_path / "eye.json", entries, 4)
        rc = cli.main(["bound", path])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["trace_only_lower"] == 1
        assert report["q_traceless"] == {"re": 0, "im": 0}

    def test_nilpotent(self, tmp_path, capsys):
        path = write_json_matrix(tmp_path / "nil.json", [[0, 0], [1, 0], [0, 0], [0, 0]], 2)
        rc = cli.main(["bound", path])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["trace_only_lower"] == 0

    def test_one_by_one(self, tmp_path, capsys):
        path = write_json_matrix(tmp_path / "one.json", [[5, 0]], 1)
        rc = cli.main(["bound", path])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["trace_only_lower"] is None
        assert report["note"] == "dimension < 2"


class TestReportInvariants:
    def test_bound_never_exceeds_observed(self, tmp_path, capsys):
        for seed in range(10):
            a = generate(EnsembleSpec("Ginibre", 6, seed))
            entries = [[v.real, v.imag] for v in np.asarray(a).ravel()]
            path = write_json_matrix(tmp_path / f"g{seed}.json", entries, 6)
            assert cli.main(["analyze", path]) == 0
            report = json.loads(capsys.readouterr().out)
            lower = report["bounds"]["trace_only_lower"]
            observed = report["bounds"]["observed_spectral_radius"]
            assert lower <= observed + 1e-8 * (1 + observed)

    def test_report_round_trips_losslessly(self, tmp_path, capsys):
        a = generate(EnsembleSpec("Ginibre", 5, 77))
        entries = [[v.real, v.imag] for v in np.asarray(a).ravel()]
        path = write_json_matrix(tmp_path / "g.json", entries, 5)
        assert cli.main(["analyze", path]) == 0
        text = capsys.readouterr().out
        report = json.loads(text)
        assert canonical_json(report) == text

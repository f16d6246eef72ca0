import math

import numpy as np
import pytest

from dirwalk import plotting
from dirwalk.cli import main, parse_angle, render_csv
from dirwalk.observables import (
    TwoPointState,
    distribution_of,
    mean_position,
    second_moment,
    std_deviation,
)
from dirwalk.propagate import evolve_analytic


def run(args, capsys=None):
    code = main(args)
    if capsys is None:
        return code, None
    return code, capsys.readouterr()


def parse_csv(text):
    lines = [line for line in text.split("\n") if line]
    header = lines[0].split(",")
    rows = [[float(cell) for cell in line.split(",")] for line in lines[1:]]
    return header, rows


class TestAngleParsing:
    @pytest.mark.parametrize("text,value", [
        ("pi", math.pi),
        ("pi/2", math.pi / 2),
        ("3*pi/4", 3 * math.pi / 4),
        ("-pi/3", -math.pi / 3),
        ("2*pi", 2 * math.pi),
        ("0.75", 0.75),
        ("-1.25e-3", -0.00125),
        (" PI / 4 ", math.pi / 4),
    ])
    def test_accepted_forms(self, text, value):
        assert parse_angle(text) == pytest.approx(value, rel=0, abs=1e-16)

    def test_bad_angle_is_usage_error(self, capsys):
        code, _ = run(["evolve", "--alpha", "two", "--t", "1"], capsys)
        assert code == 1

    @pytest.mark.parametrize("bad", ["pi/0", "nan", "inf", "-inf"])
    def test_degenerate_angles_rejected(self, bad, capsys):
        code, _ = run(["evolve", "--alpha", bad, "--t", "1"], capsys)
        assert code == 1

    def test_nonfinite_time_rejected(self, capsys):
        code, _ = run(["evolve", "--t", "inf"], capsys)
        assert code == 1

    def test_negative_position_value(self, capsys):
        code, captured = run(["evolve", "--x0", "-3", "--t", "0"], capsys)
        assert code == 0
        _, rows = parse_csv(captured.out)
        probs = {int(r[0]): r[3] for r in rows}
        assert probs[-3] == 1.0


class TestEvolve:
    def test_delta_at_origin(self, capsys):
        code, captured = run(["evolve", "--alpha", "0", "--t", "0"], capsys)
        assert code == 0
        header, rows = parse_csv(captured.out)
        assert header == ["x", "re_psi", "im_psi", "prob"]
        probs = {int(r[0]): r[3] for r in rows}
        assert probs[0] == 1.0
        assert sum(probs.values()) == pytest.approx(1.0, abs=1e-15)

    def test_two_point_profile_mass(self, capsys):
        code, captured = run(["evolve", "--alpha", "pi/2", "--k", "3",
                              "--theta", "pi/4", "--t", "35"], capsys)
        assert code == 0
        _, rows = parse_csv(captured.out)
        assert sum(r[3] for r in rows) == pytest.approx(1.0, abs=1e-9)

    def test_engines_agree(self, capsys):
        args = ["evolve", "--alpha", "pi/3", "--k", "1", "--t", "12"]
        code, captured = run(args + ["--engine", "analytic"], capsys)
        assert code == 0
        _, analytic = parse_csv(captured.out)
        code, captured = run(args + ["--engine", "spectral"], capsys)
        assert code == 0
        _, spectral = parse_csv(captured.out)
        assert len(analytic) == len(spectral)
        for ra, rs in zip(analytic, spectral):
            assert ra[0] == rs[0]
            for col in (1, 2, 3):
                assert abs(ra[col] - rs[col]) <= 1e-8

    def test_missing_time_is_usage_error(self, capsys):
        code, _ = run(["evolve"], capsys)
        assert code == 1


class TestSurvival:
    def test_initial_row_is_one(self, capsys):
        code, captured = run(["survival", "--alpha", "0", "--k", "1",
                              "--t-min", "1e-4", "--t-max", "50", "--samples", "16"], capsys)
        assert code == 0
        header, rows = parse_csv(captured.out)
        assert header == ["t", "P"]
        assert rows[0][1] == pytest.approx(1.0, abs=1e-6)
        assert all(0.0 <= r[1] <= 1.0 for r in rows)

    def test_enhanced_curve_sits_below_normal(self, capsys):
        shared = ["survival", "--k", "1", "--theta", "pi/4", "--gamma", "0"]
        code, captured = run(shared + ["--alpha", "pi/2"], capsys)
        assert code == 0
        _, enhanced = parse_csv(captured.out)
        code, captured = run(shared + ["--alpha", "0"], capsys)
        assert code == 0
        _, normal = parse_csv(captured.out)
        tgrid = [r[0] for r in enhanced]
        assert tgrid == [r[0] for r in normal]
        at50 = min(range(len(tgrid)), key=lambda i: abs(tgrid[i] - 50.0))
        assert enhanced[at50][1] < normal[at50][1]

    def test_explicit_range_override(self, capsys):
        shared = ["survival", "--alpha", "0", "--k", "1", "--t-min", "1", "--t-max", "20",
                  "--samples", "8"]
        code, captured = run(shared + ["--k0", "-5", "--k1", "5"], capsys)
        assert code == 0
        _, wide = parse_csv(captured.out)
        code, captured = run(shared, capsys)
        assert code == 0
        _, narrow = parse_csv(captured.out)
        # a wider range keeps strictly more mass at every sampled time
        assert all(w[1] > n[1] for w, n in zip(wide, narrow))

    def test_deterministic_output(self, tmp_path):
        args = ["survival", "--alpha", "pi/2", "--k", "1", "--samples", "64"]
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert b"\r" not in first.read_bytes()

    def test_svg_points_equal_csv_rows(self, tmp_path):
        out = tmp_path / "surv.csv"
        code = main(["survival", "--alpha", "0", "--k", "1", "--samples", "32",
                     "--out", str(out), "--svg"])
        assert code == 0
        svg = tmp_path / "surv.svg"
        assert svg.exists() and svg.read_text().lstrip().startswith("<?xml")
        _, rows = parse_csv(out.read_text())
        fig = plotting.survival_figure([r[0] for r in rows], [r[1] for r in rows])
        x, y = fig.axes[0].lines[0].get_data()
        assert list(x) == [r[0] for r in rows]
        assert list(y) == [r[1] for r in rows]

    def test_svg_without_out_is_usage_error(self, capsys):
        code, _ = run(["survival", "--svg"], capsys)
        assert code == 1


class TestFit:
    def test_exact_power_law_csv(self, tmp_path, capsys):
        times = np.geomspace(5.0, 150.0, 128)
        rows = [(t, t**-3.0) for t in times]
        path = tmp_path / "p3.csv"
        path.write_text(render_csv(("t", "P"), rows), newline="")
        code, captured = run(["fit", "--in", str(path)], capsys)
        assert code == 0
        header, data = parse_csv(captured.out)
        assert header == ["exponent", "r_squared", "t_min", "t_max"]
        assert data[0][0] == pytest.approx(-3.0, abs=1e-6)
        assert data[0][2:] == [10.0, 100.0]

    def test_fit_of_generated_survival(self, tmp_path, capsys):
        path = tmp_path / "surv.csv"
        assert main(["survival", "--alpha", "pi/2", "--k", "1", "--t-min", "8",
                     "--t-max", "110", "--samples", "1024", "--out", str(path)]) == 0
        code, captured = run(["fit", "--in", str(path)], capsys)
        assert code == 0
        _, data = parse_csv(captured.out)
        assert data[0][0] == pytest.approx(-3.0, abs=0.3)

    def test_missing_input_is_usage_error(self, capsys):
        code, _ = run(["fit"], capsys)
        assert code == 1
        code, _ = run(["fit", "--in", "/nonexistent/file.csv"], capsys)
        assert code == 1


class TestMoments:
    def test_columns_and_balanced_mean(self, capsys):
        code, captured = run(["moments", "--k", "3", "--theta", "pi/4",
                              "--alpha", "pi/3", "--t-max", "20", "--samples", "5"], capsys)
        assert code == 0
        header, rows = parse_csv(captured.out)
        assert header == ["t", "mean", "second_moment", "sigma"]
        for r in rows:
            assert abs(r[1]) <= 1e-8

    @pytest.mark.parametrize("alpha", ["0", "pi/3", "pi/2"])
    def test_second_moment_offset(self, alpha, capsys):
        code, captured = run(["moments", "--k", "3", "--alpha", alpha,
                              "--t-max", "50", "--samples", "6"], capsys)
        assert code == 0
        _, rows = parse_csv(captured.out)
        for r in rows:
            assert r[2] - 2.0 * r[0] ** 2 == pytest.approx(9.0, abs=1e-6)

    def test_sigma_column_matches_library_bitwise(self, capsys):
        code, captured = run(["moments", "--k", "2", "--theta", "pi/8",
                              "--alpha", "pi/3", "--t-max", "10", "--samples", "3"], capsys)
        assert code == 0
        _, rows = parse_csv(captured.out)
        state = TwoPointState(2, math.pi / 8)
        for r in rows:
            dist = distribution_of(evolve_analytic(math.pi / 3, state.initial_state(), r[0]))
            assert r[1] == mean_position(dist)
            assert r[2] == second_moment(dist)
            assert r[3] == std_deviation(dist)


class TestSweepAlpha:
    def test_sweep_rows(self, capsys):
        code, captured = run(["sweep-alpha", "--k", "1", "--alpha-count", "4",
                              "--samples", "768"], capsys)
        assert code == 0
        header, rows = parse_csv(captured.out)
        assert header == ["alpha", "interference", "fitted_exponent"]
        by_alpha = {round(r[0], 12): r for r in rows}
        normal = by_alpha[0.0]
        enhanced = by_alpha[round(math.pi / 2, 12)]
        assert abs(normal[1] + 1.0) <= 1e-12
        assert -1.3 <= normal[2] <= -0.7
        assert abs(enhanced[1] - 1.0) <= 1e-12
        assert enhanced[2] <= -2.5
        for r in rows:
            want = -math.cos(2.0 * r[0])
            assert abs(r[1] - want) <= 1e-12


class TestValidate:
    def test_report_and_exit_code(self, capsys):
        code, captured = run(["validate"], capsys)
        assert code == 0
        assert "RESULT: PASS" in captured.out
        assert captured.out.count("PASS") >= 7
        assert "sigma report" in captured.out
        assert "k=1 anomaly" in captured.out

    def test_failure_maps_to_exit_code_two(self, capsys, monkeypatch):
        from dirwalk import cli
        from dirwalk.validation import CheckResult, ValidationReport

        broken = ValidationReport(
            checks=(CheckResult("synthetic check", False, 1.0, 0.5),), notes=())
        monkeypatch.setattr(cli, "run_validation", lambda buffer: broken)
        code, captured = run(["validate"], capsys)
        assert code == 2
        assert "RESULT: FAIL" in captured.out


class TestConfigFile:
    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# survival settings\nalpha = pi/2\nk = 1\nsamples = 32\n")
        from_cfg = tmp_path / "cfg.csv"
        overridden = tmp_path / "cli.csv"
        plain = tmp_path / "plain.csv"
        assert main(["survival", "--config", str(cfg), "--out", str(from_cfg)]) == 0
        assert main(["survival", "--config", str(cfg), "--alpha", "0",
                     "--out", str(overridden)]) == 0
        assert main(["survival", "--alpha", "0", "--k", "1", "--samples", "32",
                     "--out", str(plain)]) == 0
        assert overridden.read_bytes() == plain.read_bytes()
        assert from_cfg.read_bytes() != plain.read_bytes()

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("flux = 3\n")
        code, _ = run(["survival", "--config", str(cfg)], capsys)
        assert code == 1


class TestTopLevel:
    def test_no_command_is_usage_error(self, capsys):
        code, _ = run([], capsys)
        assert code == 1

    def test_unknown_command_is_usage_error(self, capsys):
        code, _ = run(["transmogrify"], capsys)
        assert code == 1

    def test_float_serialization_round_trips(self):
        text = render_csv(("t", "P"), [(math.pi, 1.0 / 3.0)])
        _, rows = parse_csv(text)
        assert rows[0][0] == math.pi
        assert rows[0][1] == 1.0 / 3.0

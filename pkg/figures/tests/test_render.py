"""Renderers: every figure id produces a file; fits land in the sidecar."""

import json

import pytest

from vibronfig.cli import run
from vibronfig.render import render
from vibronfig.specs import FIGURE_IDS, FigureSpec


@pytest.fixture
def all_inputs(spectrum_csv, timeseries_csv, sweep_csv, trajectories_csv,
               grid_csv):
    low = timeseries_csv("low.csv", 0.2)
    high = timeseries_csv("high.csv", 3.0)
    return {
        "fig2": {"spectrum": str(spectrum_csv)},
        "fig3": {"grid": str(grid_csv)},
        "fig4a": {"timeseries_low": str(low), "timeseries_high": str(high)},
        "fig4b": {"timeseries_low": str(low), "timeseries_high": str(high)},
        "fig4c": {"grid": str(grid_csv)},
        "fig5a": {"sweep": str(sweep_csv)},
        "fig5b": {"sweep": str(sweep_csv)},
        "fig6": {"trajectories": str(trajectories_csv)},
        "fig7": {"grid": str(grid_csv)},
    }


class TestSpecs:
    def test_unknown_id_rejected(self):
        with pytest.raises(ValueError, match="unknown figure id"):
            FigureSpec(figure_id="fig99")

    def test_missing_role_rejected(self):
        with pytest.raises(ValueError, match="spectrum"):
            FigureSpec(figure_id="fig2")

    def test_style_merge(self):
        spec = FigureSpec(figure_id="fig2", inputs={"spectrum": "x.csv"},
                          style={"dpi": 72})
        merged = spec.resolved_style()
        assert merged["dpi"] == 72
        assert merged["gamma_c"] == 0.2


class TestRender:
    @pytest.mark.parametrize("figure_id", FIGURE_IDS)
    def test_every_figure_renders(self, figure_id, all_inputs, tmp_path):
        spec = FigureSpec(figure_id=figure_id, inputs=all_inputs[figure_id])
        out = render(spec, tmp_path / f"{figure_id}.png")
        assert out.exists() and out.stat().st_size > 1000

    def test_rendering_is_deterministic(self, all_inputs, tmp_path):
        spec = FigureSpec(figure_id="fig2", inputs=all_inputs["fig2"])
        a = render(spec, tmp_path / "a.png")
        b = render(spec, tmp_path / "b.png")
        assert a.read_bytes() == b.read_bytes()

    def test_fig5b_sidecar_slopes(self, all_inputs, tmp_path):
        spec = FigureSpec(figure_id="fig5b", inputs=all_inputs["fig5b"])
        render(spec, tmp_path / "fig5b.png")
        sidecar = json.loads((tmp_path / "fig5b.fit.json").read_text())
        # the synthetic sweep has max_gap = 10 N (gamma - 0.2) above gamma_c
        for n in (100, 200, 400):
            assert sidecar["fits"][str(n)]["slope"] == pytest.approx(
                10.0 * n, rel=1e-10)

    def test_svg_output(self, all_inputs, tmp_path):
        spec = FigureSpec(figure_id="fig6", inputs=all_inputs["fig6"])
        out = render(spec, tmp_path / "fig6.svg")
        assert out.suffix == ".svg" and out.stat().st_size > 1000


class TestCli:
    def test_success(self, all_inputs, tmp_path):
        out = str(tmp_path / "fig2.png")
        code = run(["--figure", "fig2",
                    "--input", f"spectrum={all_inputs['fig2']['spectrum']}",
                    "--out", out])
        assert code == 0

    def test_schema_failure_is_one(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("gamma\n0.1\n")
        code = run(["--figure", "fig2", "--input", f"spectrum={bad}",
                    "--out", str(tmp_path / "f.png")])
        assert code == 1
        assert "level_index" in capsys.readouterr().err

    def test_empty_input_is_one(self, tmp_path, capsys):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        code = run(["--figure", "fig2", "--input", f"spectrum={empty}",
                    "--out", str(tmp_path / "f.png")])
        assert code == 1
        assert "empty" in capsys.readouterr().err

    def test_usage_error_is_two(self):
        assert run(["--figure", "fig99", "--out", "x.png"]) == 2

    def test_missing_role_is_one(self, tmp_path, capsys):
        code = run(["--figure", "fig2", "--out", str(tmp_path / "f.png")])
        assert code == 1
        assert "spectrum" in capsys.readouterr().err

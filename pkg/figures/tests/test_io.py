"""Schema readers: validation errors name the offending columns."""

import numpy as np
import pytest

from vibronfig import io


class TestNamedColumns:
    def test_spectrum_reads(self, spectrum_csv):
        data = io.read_spectrum(spectrum_csv)
        assert len(data["gamma"]) == 30
        assert set(np.unique(data["level_index"])) == set(range(6))

    def test_missing_column_named(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("gamma,level_index\n0.1,0\n")
        with pytest.raises(ValueError, match="energy_normalized"):
            io.read_spectrum(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ValueError, match="empty"):
            io.read_sweep(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "only.csv"
        path.write_text("gamma,N,max_gap,sentinel_count\n")
        with pytest.raises(ValueError, match="no data rows"):
            io.read_sweep(path)

    def test_timeseries_reads(self, timeseries_csv):
        data = io.read_timeseries(timeseries_csv("a.csv", 1.0))
        assert len(data["t"]) == 50
        assert data["sentinel_flag"][30] == 1.0

    def test_sweep_n_is_integer(self, sweep_csv):
        data = io.read_sweep(sweep_csv)
        assert data["N"].dtype.kind == "i"


class TestTrajectories:
    def test_blocks_split_on_eta_and_kind(self, trajectories_csv):
        blocks = io.read_trajectories(trajectories_csv)
        assert len(blocks) == 3
        kinds = [b["kind"] for b in blocks]
        assert kinds == ["below_separatrix", "above_separatrix", "separatrix"]
        assert all(len(b["phi"]) == 20 for b in blocks)


class TestGrid:
    def test_round_trip_shape(self, grid_csv):
        grid = io.read_grid(grid_csv)
        assert grid["kind"] == "planar"
        assert not grid["coarse"]
        assert grid["values"].shape == (21, 21)

    def test_missing_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3,4\n")
        with pytest.raises(ValueError, match="kind"):
            io.read_grid(path)

    def test_shape_mismatch_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("kind,planar,coarse,0\naxis1,0,1\naxis2,0,1\n1,2\n")
        with pytest.raises(ValueError, match="shape"):
            io.read_grid(path)

"""Readers for the simulator's CSV schemas.

Every reader validates the header and raises a ValueError naming the
missing column(s), so schema mismatches fail loudly before any plotting.
"""

from __future__ import annotations

import csv

import numpy as np

SPECTRUM_COLUMNS = ("gamma", "level_index", "energy_normalized")
TIMESERIES_COLUMNS = ("t", "Xz_mean", "lambda_minus", "lambda_plus",
                      "xi2_opt", "zeta2_opt", "energy", "norm", "Jz_mean",
                      "sentinel_flag")
SWEEP_COLUMNS = ("gamma", "N", "max_gap", "sentinel_count")
TRAJECTORY_COLUMNS = ("phi", "z", "eta", "kind")


def _read_named_csv(path, required) -> dict[str, list[str]]:
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty input file") from None
        missing = [c for c in required if c not in header]
        if missing:
            raise ValueError(f"{path}: missing required columns {missing} "
                             f"(found {header})")
        cols: dict[str, list[str]] = {name: [] for name in header}
        for row in reader:
            if not row:
                continue
            for name, value in zip(header, row):
                cols[name].append(value)
    if not next(iter(cols.values())):
        raise ValueError(f"{path}: no data rows")
    return cols


def _as_float(cols, names):
    return {n: np.array([float(v) for v in cols[n]]) for n in names}


def read_spectrum(path) -> dict[str, np.ndarray]:
    cols = _read_named_csv(path, SPECTRUM_COLUMNS)
    return _as_float(cols, SPECTRUM_COLUMNS)


def read_timeseries(path) -> dict[str, np.ndarray]:
    cols = _read_named_csv(path, TIMESERIES_COLUMNS)
    return _as_float(cols, TIMESERIES_COLUMNS)


def read_sweep(path) -> dict[str, np.ndarray]:
    cols = _read_named_csv(path, SWEEP_COLUMNS)
    out = _as_float(cols, SWEEP_COLUMNS)
    out["N"] = out["N"].astype(int)
    return out


def read_trajectories(path) -> list[dict]:
    """Trajectory blocks: consecutive rows sharing (eta, kind)."""
    cols = _read_named_csv(path, TRAJECTORY_COLUMNS)
    phi = np.array([float(v) for v in cols["phi"]])
    z = np.array([float(v) for v in cols["z"]])
    eta = np.array([float(v) for v in cols["eta"]])
    kind = cols["kind"]
    blocks = []
    start = 0
    for i in range(1, len(phi) + 1):
        boundary = i == len(phi) or eta[i] != eta[start] or kind[i] != kind[start]
        # a jump in phi within one level set also separates contour pieces
        if not boundary and abs(phi[i] - phi[i - 1]) > 1.0:
            boundary = True
        if boundary:
            blocks.append({"phi": phi[start:i], "z": z[start:i],
                           "eta": float(eta[start]), "kind": kind[start]})
            start = i
    return blocks


def read_grid(path) -> dict:
    """Wigner grid: header line (kind, coarse), two axis lines, value rows."""
    with open(path) as f:
        head = f.readline().strip().split(",")
        if len(head) < 4 or head[0] != "kind":
            raise ValueError(f"{path}: missing grid header line "
                             "'kind,<kind>,coarse,<flag>'")
        kind, coarse = head[1], bool(int(head[3]))
        ax1_line = f.readline().strip().split(",")
        ax2_line = f.readline().strip().split(",")
        if ax1_line[0] != "axis1" or ax2_line[0] != "axis2":
            raise ValueError(f"{path}: missing axis1/axis2 header lines")
        axis1 = np.array([float(v) for v in ax1_line[1:]])
        axis2 = np.array([float(v) for v in ax2_line[1:]])
        values = np.loadtxt(f, delimiter=",")
    values = np.atleast_2d(values)
    if values.shape != (len(axis1), len(axis2)):
        raise ValueError(f"{path}: value block shape {values.shape} does not "
                         f"match axes ({len(axis1)}, {len(axis2)})")
    return {"kind": kind, "coarse": coarse, "axis1": axis1, "axis2": axis2,
            "values": values}

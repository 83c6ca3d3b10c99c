"""Synthetic CSV fixtures conforming to the simulator's output schemas."""

import numpy as np
import pytest


@pytest.fixture
def spectrum_csv(tmp_path):
    path = tmp_path / "spectrum.csv"
    with open(path, "w") as f:
        f.write("gamma,level_index,energy_normalized\n")
        for gamma in (0.0, 0.25, 0.5, 0.75, 1.0):
            for idx in range(6):
                f.write(f"{gamma},{idx},{idx * (1 - gamma) + 0.1 * idx ** 2}\n")
    return path


@pytest.fixture
def timeseries_csv(tmp_path):
    def make(name, scale):
        path = tmp_path / name
        t = np.linspace(0.0, 10.0, 50)
        with open(path, "w") as f:
            f.write("t,Xz_mean,lambda_minus,lambda_plus,xi2_opt,zeta2_opt,"
                    "energy,norm,Jz_mean,sentinel_flag\n")
            for i, ti in enumerate(t):
                xi2 = 1.0 + scale * np.sin(ti) ** 2
                zeta2 = max(1.0 - 0.5 * np.sin(ti) ** 2, 1e-3)
                flag = 1.0 if i == 30 else 0.0
                f.write(f"{ti},5.0,0.5,2.0,{xi2},{zeta2},-1.0,1.0,0.0,{flag}\n")
        return path
    return make


@pytest.fixture
def sweep_csv(tmp_path):
    """max_gap exactly linear in gamma above 0.2 with slope 10 * N."""
    path = tmp_path / "sweep.csv"
    with open(path, "w") as f:
        f.write("gamma,N,max_gap,sentinel_count\n")
        for n in (100, 200, 400):
            for g in (0.1, 0.15, 0.22, 0.26, 0.3):
                gap = 0.01 if g <= 0.2 else 10.0 * n * (g - 0.2)
                f.write(f"{g},{n},{gap},0\n")
    return path


@pytest.fixture
def trajectories_csv(tmp_path):
    path = tmp_path / "traj.csv"
    phi = np.linspace(0.5, 1.5, 20)
    with open(path, "w") as f:
        f.write("phi,z,eta,kind\n")
        for p in phi:
            f.write(f"{p},{0.2 * np.sin(p)},-0.5,below_separatrix\n")
        for p in phi:
            f.write(f"{p},{0.8 + 0.1 * np.cos(p)},-0.3,above_separatrix\n")
        for p in phi:
            f.write(f"{p},{0.99},-0.5,separatrix\n")
    return path


@pytest.fixture
def grid_csv(tmp_path):
    path = tmp_path / "grid.csv"
    ax = np.linspace(-2.0, 2.0, 21)
    with open(path, "w") as f:
        f.write("kind,planar,coarse,0\n")
        f.write("axis1," + ",".join(str(v) for v in ax) + "\n")
        f.write("axis2," + ",".join(str(v) for v in ax) + "\n")
        for x in ax:
            row = (2 / np.pi) * np.exp(-2 * (x ** 2 + ax ** 2)) - \
                0.1 * np.exp(-((x - 1) ** 2 + ax ** 2))
            f.write(",".join(f"{v:.12g}" for v in row) + "\n")
    return path

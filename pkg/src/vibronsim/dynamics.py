"""Exact quench dynamics and entanglement witnesses.

Propagation is by a one-time dense eigendecomposition of the zero-
magnetization block (dimension floor(N/2)+1), after which each output time
costs only a phase rotation.  Observables X_x, X_y are sparse maps from the
l = 0 block into the l in [-1, 1] band, so the full Hamiltonian is never
materialized for large N.

Witnesses per time step: covariance matrix Sigma_ij = 2 <X_i X_j + X_j X_i>/N
over the mode-x SU(2) plane directions, its eigenvalues lambda_-, lambda_+,
the optimal squeezing parameter xi2_opt = N^2 lambda_- / (4 <X_z>^2) and the
optimal inverse quantum Fisher information ratio zeta2_opt = 1/lambda_+.
When <X_z> collapses below the sentinel threshold, xi2_opt is reported as
+inf with a flag instead of amplifying floating-point noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebra, model
from .fock import Convention, FockBasis, QuantumState

__all__ = [
    "TimeFrame",
    "QuenchConfig",
    "TimeSeries",
    "evolve",
    "covariance_xy",
    "entanglement_criteria",
    "quench",
    "max_gap",
    "sweep",
    "dump_timeseries_csv",
    "load_timeseries_csv",
    "dump_sweep_csv",
    "SENTINEL_FACTOR",
]

SENTINEL_FACTOR = 1e-8
TIME_CHUNK = 256


@dataclass(frozen=True)
class TimeFrame:
    """Output time grid: ``points`` samples spanning [0, t_max]."""
    t_max: float = 1000.0
    points: int = 10000

    def grid(self) -> np.ndarray:
        if self.t_max <= 0 or self.points < 2:
            raise ValueError("frame needs t_max > 0 and at least two points")
        return np.linspace(0.0, self.t_max, self.points)


@dataclass(frozen=True)
class QuenchConfig:
    gamma: float
    n_total: int
    frame: TimeFrame = field(default_factory=TimeFrame)
    hamiltonian_kind: model.HamiltonianKind = model.HamiltonianKind.SPINOR_ROTATED
    normalization: model.Normalization | None = None
    method: str = "band"  # "band" (l=0 pipeline) or "full" (brute force)

    def __post_init__(self):
        if self.gamma == 0.0 and self.hamiltonian_kind is model.HamiltonianKind.SPINOR_ROTATED:
            raise ValueError("gamma = 0 quench: use the n0_only protocol instead")
        if self.method not in ("band", "full"):
            raise ValueError("method must be 'band' or 'full'")


@dataclass
class TimeSeries:
    times: np.ndarray
    xz_mean: np.ndarray
    lambda_minus: np.ndarray
    lambda_plus: np.ndarray
    xi2_opt: np.ndarray
    zeta2_opt: np.ndarray
    energy: np.ndarray
    norm: np.ndarray
    jz_mean: np.ndarray
    sentinel_flag: np.ndarray  # bool per row
    nx_mean: np.ndarray | None = None
    n0_mean: np.ndarray | None = None

    def columns(self) -> dict[str, np.ndarray]:
        return {
            "t": self.times, "Xz_mean": self.xz_mean,
            "lambda_minus": self.lambda_minus, "lambda_plus": self.lambda_plus,
            "xi2_opt": self.xi2_opt, "zeta2_opt": self.zeta2_opt,
            "energy": self.energy, "norm": self.norm, "Jz_mean": self.jz_mean,
            "sentinel_flag": self.sentinel_flag.astype(float),
        }


def evolve(h: algebra.SparseOperator, psi0: QuantumState, times) -> list[QuantumState]:
    """psi(t) = sum_k exp(-i E_k t) <v_k|psi0> |v_k> via dense eigh."""
    if psi0.basis != h.domain:
        raise ValueError("initial state lives outside the Hamiltonian domain")
    evals, evecs = model.spectral_decomposition(h)
    c = evecs.conj().T @ psi0.amplitudes
    out = []
    for t in np.asarray(times, dtype=float):
        amps = evecs @ (np.exp(-1j * evals * t) * c)
        out.append(QuantumState(h.domain, amps / np.linalg.norm(amps)))
    return out


def _xy_band_ops(basis: FockBasis) -> tuple[algebra.SparseOperator, algebra.SparseOperator]:
    band = FockBasis.l_band(basis.n_total, -1, 1)
    cod = {"x": band, "y": band}
    su2 = algebra.su2_subalgebra("mode_x", basis, codomains=cod, axes=("x", "y"))
    return su2["x"], su2["y"]


def _witness_rows(sxx, sxy, syy, xz, n_total):
    """Vectorized covariance eigenvalues and witnesses from Sigma entries."""
    half_tr = 0.5 * (sxx + syy)
    disc = np.sqrt(np.maximum(0.25 * (sxx - syy) ** 2 + sxy ** 2, 0.0))
    lam_minus = half_tr - disc
    lam_plus = half_tr + disc
    sentinel = np.abs(xz) < SENTINEL_FACTOR * n_total
    with np.errstate(divide="ignore", invalid="ignore"):
        xi2 = n_total ** 2 * lam_minus / (4.0 * xz ** 2)
    xi2 = np.where(sentinel, np.inf, xi2)
    zeta2 = 1.0 / lam_plus
    return lam_minus, lam_plus, xi2, zeta2, sentinel


def covariance_xy(psi: QuantumState) -> tuple[np.ndarray, np.ndarray]:
    """Covariance matrix Sigma (2x2, xy plane) and sorted eigenvalues
    (lambda_-, lambda_+) of a single state."""
    basis = psi.basis
    if basis.l_range == (0, 0):
        xx, xy = _xy_band_ops(basis)
        u, v = xx.apply(psi.amplitudes), xy.apply(psi.amplitudes)
    elif basis.l_range is None and basis.convention is Convention.CIRCULAR:
        su2 = algebra.su2_subalgebra("mode_x", basis)
        u, v = su2["x"].apply(psi.amplitudes), su2["y"].apply(psi.amplitudes)
    else:
        raise ValueError("covariance_xy expects a circular full or fixed_l(0) basis")
    n = basis.n_total
    sxx = 4.0 * np.real(np.vdot(u, u)) / n
    syy = 4.0 * np.real(np.vdot(v, v)) / n
    sxy = 4.0 * np.real(np.vdot(u, v)) / n
    sigma = np.array([[sxx, sxy], [sxy, syy]])
    evals = np.linalg.eigvalsh(sigma)
    return sigma, evals


def entanglement_criteria(psi: QuantumState) -> tuple[float, float, bool]:
    """(xi2_opt, zeta2_opt, sentinel_flag) for one state."""
    basis = psi.basis
    _, (lam_minus, lam_plus) = covariance_xy(psi)
    n = basis.n_total
    occ = basis.occupations()
    xz_diag = 0.5 * (occ[:, 1] - 0.5 * (occ[:, 0] + occ[:, 2]))
    xz = float(np.sum(np.abs(psi.amplitudes) ** 2 * xz_diag))
    sentinel = abs(xz) < SENTINEL_FACTOR * n
    xi2 = np.inf if sentinel else n ** 2 * lam_minus / (4.0 * xz ** 2)
    return float(xi2), float(1.0 / lam_plus), sentinel


def _quench_band(config: QuenchConfig) -> TimeSeries:
    n = config.n_total
    basis = FockBasis.fixed_l(n, 0)
    params = model.ModelParams(gamma=config.gamma, n_total=n,
                               normalization=config.normalization)
    h = model.build(config.hamiltonian_kind, params, basis)
    evals, evecs = model.spectral_decomposition(h)
    psi0 = np.zeros(basis.dim, dtype=np.complex128)
    psi0[basis.index_of((0, n, 0))] = 1.0
    c = evecs.conj().T @ psi0

    xx, xy = _xy_band_ops(basis)
    occ = basis.occupations().astype(float)
    xz_diag = 0.5 * (occ[:, 1] - 0.5 * (occ[:, 0] + occ[:, 2]))
    nx_diag = 0.5 * (occ[:, 0] + occ[:, 2])
    n0_diag = occ[:, 1]
    hmat = h.matrix

    times = config.frame.grid()
    nt = len(times)
    cols = {k: np.empty(nt) for k in
            ("sxx", "sxy", "syy", "xz", "energy", "norm", "nx", "n0")}
    for start in range(0, nt, TIME_CHUNK):
        ts = times[start:start + TIME_CHUNK]
        phases = np.exp(-1j * np.outer(evals, ts)) * c[:, None]
        psi = evecs @ phases  # dim x chunk
        u = xx.matrix @ psi
        v = xy.matrix @ psi
        sl = slice(start, start + len(ts))
        cols["sxx"][sl] = 4.0 * np.einsum("ij,ij->j", u.conj(), u).real / n
        cols["syy"][sl] = 4.0 * np.einsum("ij,ij->j", v.conj(), v).real / n
        cols["sxy"][sl] = 4.0 * np.einsum("ij,ij->j", u.conj(), v).real / n
        dens = np.abs(psi) ** 2
        cols["xz"][sl] = xz_diag @ dens
        cols["nx"][sl] = nx_diag @ dens
        cols["n0"][sl] = n0_diag @ dens
        cols["energy"][sl] = np.einsum("ij,ij->j", psi.conj(), hmat @ psi).real
        cols["norm"][sl] = np.sqrt(np.einsum("ij,ij->j", psi.conj(), psi).real)

    lam_m, lam_p, xi2, zeta2, flags = _witness_rows(
        cols["sxx"], cols["sxy"], cols["syy"], cols["xz"], n)
    return TimeSeries(times=times, xz_mean=cols["xz"], lambda_minus=lam_m,
                      lambda_plus=lam_p, xi2_opt=xi2, zeta2_opt=zeta2,
                      energy=cols["energy"], norm=cols["norm"],
                      jz_mean=np.zeros(nt), sentinel_flag=flags,
                      nx_mean=cols["nx"], n0_mean=cols["n0"])


def _quench_full(config: QuenchConfig) -> TimeSeries:
    """Brute-force pipeline on the full basis; oracle for the band method."""
    n = config.n_total
    basis = FockBasis.full(n)
    params = model.ModelParams(gamma=config.gamma, n_total=n,
                               normalization=config.normalization)
    h = model.build(config.hamiltonian_kind, params, basis)
    psi0 = QuantumState.number_state(basis, (0, n, 0))
    times = config.frame.grid()
    states = evolve(h, psi0, times)
    su2 = algebra.su2_subalgebra("mode_x", basis)
    occ = basis.occupations().astype(float)
    jz_diag = occ[:, 0] - occ[:, 2]
    nx_diag = 0.5 * (occ[:, 0] + occ[:, 2])
    n0_diag = occ[:, 1]

    nt = len(times)
    cols = {k: np.empty(nt) for k in
            ("sxx", "sxy", "syy", "xz", "energy", "norm", "jz", "nx", "n0")}
    for i, st in enumerate(states):
        a = st.amplitudes
        u, v = su2["x"].apply(a), su2["y"].apply(a)
        cols["sxx"][i] = 4.0 * np.real(np.vdot(u, u)) / n
        cols["syy"][i] = 4.0 * np.real(np.vdot(v, v)) / n
        cols["sxy"][i] = 4.0 * np.real(np.vdot(u, v)) / n
        cols["xz"][i] = np.real(su2["z"].expectation(a))
        dens = np.abs(a) ** 2
        cols["jz"][i] = jz_diag @ dens
        cols["nx"][i] = nx_diag @ dens
        cols["n0"][i] = n0_diag @ dens
        cols["energy"][i] = np.real(h.expectation(a))
        cols["norm"][i] = float(np.linalg.norm(a))
    lam_m, lam_p, xi2, zeta2, flags = _witness_rows(
        cols["sxx"], cols["sxy"], cols["syy"], cols["xz"], n)
    return TimeSeries(times=times, xz_mean=cols["xz"], lambda_minus=lam_m,
                      lambda_plus=lam_p, xi2_opt=xi2, zeta2_opt=zeta2,
                      energy=cols["energy"], norm=cols["norm"],
                      jz_mean=cols["jz"], sentinel_flag=flags,
                      nx_mean=cols["nx"], n0_mean=cols["n0"])


def quench(config: QuenchConfig) -> TimeSeries:
    """Zero-magnetization quench from |0, N, 0> with full witness tracking."""
    if config.method == "band":
        return _quench_band(config)
    return _quench_full(config)


def max_gap(series: TimeSeries) -> tuple[float, int]:
    """(max over non-sentinel rows of xi2_opt - zeta2_opt, sentinel count)."""
    good = ~series.sentinel_flag
    n_sentinel = int(np.sum(series.sentinel_flag))
    if not np.any(good):
        raise ValueError("every row hit the sentinel; no finite gap exists")
    return float(np.max(series.xi2_opt[good] - series.zeta2_opt[good])), n_sentinel


def sweep_cell(gamma: float, n_total: int, frame: TimeFrame) -> tuple[float, int, float, int]:
    """One (gamma, N) evaluation; top-level so executors can pickle it."""
    series = quench(QuenchConfig(gamma=gamma, n_total=n_total, frame=frame))
    gap, n_sentinel = max_gap(series)
    return float(gamma), int(n_total), gap, n_sentinel


def sweep(gamma_grid, n_list, frame: TimeFrame = TimeFrame(),
          map_fn=map) -> list[tuple[float, int, float, int]]:
    """(gamma, N, max_gap, sentinel_count) table over the grid.

    ``map_fn`` lets the caller inject a worker pool's map; the module itself
    never spawns workers.
    """
    cells = [(float(g), int(n), frame) for n in n_list for g in gamma_grid]
    return list(map_fn(_sweep_star, cells))


def _sweep_star(args):
    return sweep_cell(*args)


def dump_timeseries_csv(series: TimeSeries, path) -> None:
    cols = series.columns()
    keys = list(cols)
    with open(path, "w") as f:
        f.write(",".join(keys) + "\n")
        for i in range(len(series.times)):
            f.write(",".join(f"{cols[k][i]:.17g}" for k in keys) + "\n")


def load_timeseries_csv(path) -> TimeSeries:
    data = np.genfromtxt(path, delimiter=",", names=True)
    return TimeSeries(times=data["t"], xz_mean=data["Xz_mean"],
                      lambda_minus=data["lambda_minus"], lambda_plus=data["lambda_plus"],
                      xi2_opt=data["xi2_opt"], zeta2_opt=data["zeta2_opt"],
                      energy=data["energy"], norm=data["norm"],
                      jz_mean=data["Jz_mean"],
                      sentinel_flag=data["sentinel_flag"].astype(bool))


def dump_sweep_csv(rows, path) -> None:
    with open(path, "w") as f:
        f.write("gamma,N,max_gap,sentinel_count\n")
        for g, n, gap, cnt in rows:
            f.write(f"{g:.17g},{n},{gap:.17g},{cnt}\n")

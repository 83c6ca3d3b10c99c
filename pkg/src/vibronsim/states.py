"""State preparation: number-projected three-mode coherent states and
two-mode spin-coherent states.

All binomial/multinomial amplitudes are assembled in log space via
``scipy.special.gammaln`` so preparation stays finite up to N of a few
thousand.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

from .fock import Convention, FockBasis, QuantumState

__all__ = [
    "coherent3",
    "spin_coherent2",
    "theta_of_x",
    "dump_state_csv",
    "load_state_csv",
]


def coherent3(x: float, y: float, n_total: int) -> QuantumState:
    """Number-projected coherent state (b_c^+)^N / sqrt(N!) |0> on the
    cartesian full basis, with b_c^+ = (sigma^+ + x tau_x^+ + y tau_y^+)
    / sqrt(1 + x^2 + y^2).

    Amplitude on |n_x, n_0, n_y| is sqrt(N!/(n_x! n_0! n_y!))
    x^{n_x} y^{n_y} / (1+x^2+y^2)^{N/2}.
    """
    if not (np.isfinite(x) and np.isfinite(y)):
        raise ValueError("x and y must be finite")
    basis = FockBasis.full(n_total, Convention.CARTESIAN)
    occ = basis.occupations()
    nx, ny = occ[:, 0].astype(float), occ[:, 2].astype(float)
    n0 = occ[:, 1].astype(float)
    log_multi = 0.5 * (gammaln(n_total + 1) - gammaln(nx + 1) - gammaln(n0 + 1)
                       - gammaln(ny + 1))
    with np.errstate(divide="ignore"):
        log_x = np.where(nx > 0, nx * np.log(np.abs(x)) if x != 0 else -np.inf, 0.0)
        log_y = np.where(ny > 0, ny * np.log(np.abs(y)) if y != 0 else -np.inf, 0.0)
    sign = np.sign(x) ** occ[:, 0] * np.sign(y) ** occ[:, 2]
    log_norm = 0.5 * n_total * np.log1p(x * x + y * y)
    amps = sign * np.exp(log_multi + log_x + log_y - log_norm)
    amps = amps / np.linalg.norm(amps)
    return QuantumState(basis, amps.astype(np.complex128))


def spin_coherent2(theta: float, phi: float, n_total: int) -> QuantumState:
    """Two-mode spin-coherent state on |n_x, N - n_x, 0> embedded in the
    cartesian full basis.

    Amplitudes sqrt(C(N, n_x)) sin^{n_x}(theta/2) cos^{N-n_x}(theta/2)
    e^{-i(N-n_x)phi}; the Bloch vector of the mode-x SU(2) has length N/2.
    """
    if not (0.0 <= theta <= np.pi):
        raise ValueError("theta must lie in [0, pi]")
    basis = FockBasis.full(n_total, Convention.CARTESIAN)
    half = 0.5 * theta
    s, c = np.sin(half), np.cos(half)
    nx = np.arange(n_total + 1, dtype=float)
    log_binom = 0.5 * (gammaln(n_total + 1) - gammaln(nx + 1)
                       - gammaln(n_total - nx + 1))
    with np.errstate(divide="ignore"):
        log_s = np.where(nx > 0, nx * np.log(s) if s > 0 else -np.inf, 0.0)
        log_c = np.where(nx < n_total, (n_total - nx) * np.log(c) if c > 0 else -np.inf, 0.0)
    mags = np.exp(log_binom + log_s + log_c)
    phases = np.exp(-1j * (n_total - nx) * phi)
    amps = np.zeros(basis.dim, dtype=np.complex128)
    for k in range(n_total + 1):
        amps[basis.index_of((k, n_total - k, 0))] = mags[k] * phases[k]
    amps /= np.linalg.norm(amps)
    return QuantumState(basis, amps)


def theta_of_x(x: float) -> float:
    """Polar angle of the bent coherent state: theta = 2 arctan(x), x >= 0.

    Negative displacements are reached through phi = pi at the same |x|,
    never through theta > pi.
    """
    if x < 0:
        raise ValueError("x must be non-negative; use phi = pi for x < 0")
    return 2.0 * np.arctan(x)


def dump_state_csv(state: QuantumState, path) -> None:
    """Write amplitudes as (index, re, im) rows against the basis ordering."""
    with open(path, "w") as f:
        f.write("index,re,im\n")
        for i, a in enumerate(state.amplitudes):
            f.write(f"{i},{a.real:.17g},{a.imag:.17g}\n")


def load_state_csv(basis: FockBasis, path) -> QuantumState:
    """Read a (index, re, im) dump back onto a declared basis."""
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    data = np.atleast_2d(data)
    if data.shape[0] != basis.dim:
        raise ValueError("row count does not match basis dimension")
    amps = np.zeros(basis.dim, dtype=np.complex128)
    idx = data[:, 0].astype(int)
    amps[idx] = data[:, 1] + 1j * data[:, 2]
    return QuantumState(basis, amps)

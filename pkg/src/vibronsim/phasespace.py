"""Wigner quasiprobability distributions and quadrature observables.

Planar Wigner on the projected single-mode state, under the quadrature
convention X = (a + a^+)/2, P = (a - a^+)/2i (so [X, P] = i/2 and the
vacuum variance is 1/4).  The kernel is the displaced parity
  W(alpha) = (2/pi) sum_{m,n} c_m^* c_n (-1)^n <m|D(2 alpha)|n>,
with displacement matrix elements evaluated through a scaled Laguerre
recurrence whose intermediates are bounded by 1, so no overflow occurs at
any particle number.

Spherical SU(2) Wigner on the Bloch sphere via the multipole expansion
  W(theta, phi) = sqrt((2j+1)/4 pi) sum_{k,q} rho_kq Y_kq(theta, phi),
rho_kq = <T_kq^+>, with irreducible tensor operators generated from
normalized powers of J_+ and exact lowering.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import gammaln, sph_harm_y

from .fock import Convention, QuantumState, SingleModeState, project_two_mode

__all__ = [
    "GridKind",
    "WignerGrid",
    "quadrature_means",
    "wigner_planar",
    "wigner_sphere",
    "negativity_volume",
    "grid_integral",
    "dump_grid_csv",
    "load_grid_csv",
]

VACUUM_WIDTH = 0.5  # standard deviation of X on the vacuum


class GridKind(Enum):
    PLANAR = "planar"
    SPHERICAL = "spherical"


@dataclass
class WignerGrid:
    kind: GridKind
    axis1: np.ndarray  # X values or theta values
    axis2: np.ndarray  # P_X values or phi values
    values: np.ndarray  # shape (len(axis1), len(axis2))
    coarse: bool = False

    def __post_init__(self):
        if self.values.shape != (len(self.axis1), len(self.axis2)):
            raise ValueError("values shape does not match axes")


def _single_mode(psi) -> SingleModeState:
    if isinstance(psi, SingleModeState):
        return psi
    if isinstance(psi, QuantumState):
        if psi.basis.convention is not Convention.CARTESIAN:
            raise ValueError("project the state to the cartesian convention first")
        return project_two_mode(psi)
    raise TypeError("expected a SingleModeState or cartesian QuantumState")


def quadrature_means(psi) -> tuple[float, float]:
    """(<X>, <P_X>) of the projected single-mode state: Re/Im of <a>."""
    sm = _single_mode(psi)
    c = sm.amplitudes
    n = np.arange(1, len(c), dtype=float)
    a_mean = np.sum(np.conj(c[:-1]) * c[1:] * np.sqrt(n))
    return float(a_mean.real), float(a_mean.imag)


def _displaced_parity_sum(c: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """sum_{m,n} c_m^* c_n (-1)^n <m|D(beta)|n> over an array of betas.

    Scaled recurrence: G_n^k = sqrt(n!/(n+k)!) |beta|^k e^{-t/2} L_n^k(t)
    with t = |beta|^2; every G is a displacement matrix element magnitude,
    hence bounded by 1.
    """
    n_max = len(c) - 1
    t = np.abs(beta) ** 2
    absb = np.abs(beta)
    with np.errstate(divide="ignore", invalid="ignore"):
        phase = np.where(absb > 0, beta / np.where(absb > 0, absb, 1.0), 1.0)
    parity = (-1.0) ** np.arange(n_max + 1)
    out = np.zeros(beta.shape, dtype=np.complex128)
    with np.errstate(divide="ignore"):
        log_absb = np.where(absb > 0, np.log(np.where(absb > 0, absb, 1.0)), -np.inf)
    for k in range(n_max + 1):
        # seed G_0^k = |b|^k e^{-t/2} / sqrt(k!)
        if k == 0:
            g_prev = np.exp(-0.5 * t)
        else:
            logg = k * log_absb - 0.5 * gammaln(k + 1.0) - 0.5 * t
            g_prev = np.where(np.isneginf(logg), 0.0, np.exp(logg))
        acc_k = np.zeros_like(out)
        weight = np.conj(c[k]) * c[0] * parity[0]
        acc_k += weight * g_prev
        if n_max - k >= 1:
            rho0 = np.sqrt(1.0 / (1.0 + k))
            g_curr = rho0 * (1.0 + k - t) * g_prev
            acc_k += np.conj(c[1 + k]) * c[1] * parity[1] * g_curr
            for n in range(1, n_max - k):
                rho_n = np.sqrt((n + 1.0) / (n + 1.0 + k))
                rho_nm1 = np.sqrt(n / (n + k))
                g_next = ((2 * n + k + 1 - t) * rho_n * g_curr
                          - (n + k) * rho_n * rho_nm1 * g_prev) / (n + 1)
                g_prev, g_curr = g_curr, g_next
                acc_k += np.conj(c[n + 1 + k]) * c[n + 1] * parity[n + 1] * g_curr
        if k == 0:
            out += acc_k
        else:
            out += 2.0 * (phase ** k * acc_k).real
    return out


def wigner_planar(psi, x_grid: np.ndarray, p_grid: np.ndarray) -> WignerGrid:
    """Planar Wigner of a projected single-mode state on an (X, P_X) grid."""
    sm = _single_mode(psi)
    x = np.asarray(x_grid, dtype=float)
    p = np.asarray(p_grid, dtype=float)
    xx, pp = np.meshgrid(x, p, indexing="ij")
    beta = 2.0 * (xx + 1j * pp)
    vals = (2.0 / np.pi) * _displaced_parity_sum(sm.amplitudes, beta)
    imag = float(np.max(np.abs(vals.imag))) if vals.size else 0.0
    if imag > 1e-10:
        raise RuntimeError(f"Wigner kernel produced imaginary residue {imag:.3e}")
    step = max(np.max(np.diff(x)) if len(x) > 1 else 0.0,
               np.max(np.diff(p)) if len(p) > 1 else 0.0)
    return WignerGrid(GridKind.PLANAR, x, p, vals.real,
                      coarse=step > VACUUM_WIDTH / 4.0)


def _tensor_ops(j2: int) -> list[list[np.ndarray]]:
    """Irreducible tensors T_kq on the spin-j space, j = j2/2.

    T_kk is the normalized k-th power of J_+ (with sign (-1)^k), and
    [J_-, T_kq] = sqrt((k+q)(k-q+1)) T_{k,q-1} walks q downward.
    Returns nested lists indexed [k][q + k].
    """
    dim = j2 + 1
    j = 0.5 * j2
    m = j - np.arange(dim)  # basis ordering m = j, j-1, ..., -j
    jp = np.zeros((dim, dim))
    for i in range(1, dim):
        jp[i - 1, i] = np.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    jm = jp.T
    tensors: list[list[np.ndarray]] = []
    power = np.eye(dim)
    for k in range(dim):
        if k > 0:
            power = jp @ power
            power = power / np.linalg.norm(power)
        t_top = (-1) ** k * power / np.linalg.norm(power)
        row = [None] * (2 * k + 1)
        row[2 * k] = t_top
        t = t_top
        for q in range(k, -k, -1):
            t = (jm @ t - t @ jm) / np.sqrt((k + q) * (k - q + 1))
            row[q - 1 + k] = t
        tensors.append(row)
    return tensors


def wigner_sphere(psi, theta_grid: np.ndarray, phi_grid: np.ndarray) -> WignerGrid:
    """SU(2) Wigner of a projected two-mode state on a (theta, phi) grid.

    The single-mode label n_x maps to m = j - n_x with j = N/2, so the
    north pole (theta = 0) is the fully occupied sigma state |0, N, 0>.
    """
    sm = _single_mode(psi)
    j2 = sm.n_max
    dim = j2 + 1
    amps = sm.amplitudes  # index n_x corresponds to m = j - n_x
    theta = np.asarray(theta_grid, dtype=float)
    phi = np.asarray(phi_grid, dtype=float)
    tensors = _tensor_ops(j2)
    w = np.zeros((len(theta), len(phi)), dtype=np.complex128)
    for k in range(dim):
        # F_k(theta, phi) = sum_q rho_kq Y_kq; assemble as (theta x q) @ (q x phi)
        block = np.zeros((len(theta), len(phi)), dtype=np.complex128)
        for q in range(-k, k + 1):
            t_kq = tensors[k][q + k]
            rho = np.vdot(amps, t_kq.conj().T @ amps)
            if abs(rho) < 1e-300:
                continue
            y_theta = sph_harm_y(k, q, theta, 0.0)
            block += rho * np.outer(y_theta, np.exp(1j * q * phi))
        w += block
    w *= np.sqrt((j2 + 1) / (4.0 * np.pi))
    imag = float(np.max(np.abs(w.imag))) if w.size else 0.0
    if imag > 1e-8:
        raise RuntimeError(f"spherical Wigner imaginary residue {imag:.3e}")
    return WignerGrid(GridKind.SPHERICAL, theta, phi, w.real)


def grid_integral(grid: WignerGrid, values: np.ndarray | None = None) -> float:
    """Trapezoidal integral over the grid measure (dX dP or sin(theta)
    dtheta dphi)."""
    vals = grid.values if values is None else values
    if grid.kind is GridKind.PLANAR:
        inner = np.trapezoid(vals, grid.axis2, axis=1)
        return float(np.trapezoid(inner, grid.axis1))
    weighted = vals * np.sin(grid.axis1)[:, None]
    inner = np.trapezoid(weighted, grid.axis2, axis=1)
    return float(np.trapezoid(inner, grid.axis1))


def negativity_volume(grid: WignerGrid) -> float:
    """Integral of |W| over the regions where W < 0."""
    return grid_integral(grid, np.abs(np.minimum(grid.values, 0.0)))


def dump_grid_csv(grid: WignerGrid, path) -> None:
    """Header lines (kind, axis1, axis2) followed by row-major values."""
    with open(path, "w") as f:
        f.write(f"kind,{grid.kind.value},coarse,{int(grid.coarse)}\n")
        f.write("axis1," + ",".join(f"{v:.17g}" for v in grid.axis1) + "\n")
        f.write("axis2," + ",".join(f"{v:.17g}" for v in grid.axis2) + "\n")
        for row in grid.values:
            f.write(",".join(f"{v:.17g}" for v in row) + "\n")


def load_grid_csv(path) -> WignerGrid:
    with open(path) as f:
        head = f.readline().strip().split(",")
        kind = GridKind(head[1])
        coarse = bool(int(head[3]))
        axis1 = np.array([float(v) for v in f.readline().split(",")[1:]])
        axis2 = np.array([float(v) for v in f.readline().split(",")[1:]])
        values = np.loadtxt(f, delimiter=",")
    values = np.atleast_2d(values)
    return WignerGrid(kind, axis1, axis2, values, coarse=coarse)

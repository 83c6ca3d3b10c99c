"""Classical (N -> infinity) mean-field analysis.

Three-mode energy density over the radial coordinate r, the bent-phase
minimum r0 with critical point gamma_c = 1/5, the two-mode energy surface
h(phi, z) with z = cos(theta), its stationary points, the conjugate-variable
flow, fixed-energy level sets (including the separatrix at eta = -(1-gamma)),
and the Bloch-to-planar mapping (X, P_X) = R(theta, N) (cos phi, sin phi).

The flow implemented here is the conservative canonical pair
  phi_dot = dh/dz,   z_dot = -dh/dphi,
which keeps h constant along trajectories and reproduces the closed orbits
of the published trajectory portraits.  The source equations print z_dot
with the opposite sign, which does not conserve h; the stationary-point set
is identical either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar
from scipy.special import gammaln
from skimage import measure

__all__ = [
    "GAMMA_C",
    "MeanFieldPoint",
    "StationaryKind",
    "StationaryPoint",
    "TrajectoryKind",
    "Trajectory",
    "energy_density_3mode",
    "r_min",
    "energy_density_2mode",
    "flow_rhs",
    "stationary_points",
    "integrate_flow",
    "level_set",
    "separatrix",
    "radius_function",
    "theta_max",
    "to_phase_space",
    "dump_trajectories_csv",
    "dump_phase_space_csv",
]

GAMMA_C = 0.2


@dataclass(frozen=True)
class MeanFieldPoint:
    phi: float
    z: float

    def __post_init__(self):
        if not -1.0 <= self.z <= 1.0:
            raise ValueError("z = cos(theta) must lie in [-1, 1]")


class StationaryKind(Enum):
    MINIMUM = "minimum"
    SADDLE = "saddle"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class StationaryPoint:
    point: MeanFieldPoint
    kind: StationaryKind
    energy: float


class TrajectoryKind(Enum):
    BELOW_SEPARATRIX = "below_separatrix"
    ABOVE_SEPARATRIX = "above_separatrix"
    SEPARATRIX = "separatrix"


@dataclass
class Trajectory:
    phi: np.ndarray
    z: np.ndarray
    energy: float
    kind: TrajectoryKind


SEPARATRIX_TOL = 1e-9


def _classify_energy(eta: float, gamma: float) -> TrajectoryKind:
    sep = -(1.0 - gamma)
    if abs(eta - sep) <= SEPARATRIX_TOL:
        return TrajectoryKind.SEPARATRIX
    return TrajectoryKind.BELOW_SEPARATRIX if eta < sep else TrajectoryKind.ABOVE_SEPARATRIX


def energy_density_3mode(r: float, gamma: float) -> float:
    """e(r) = -(1-gamma)/(1+r^2) + gamma ((1-r^2)/(1+r^2))^2."""
    if r < 0:
        raise ValueError("r must be non-negative")
    s = 1.0 + r * r
    return -(1.0 - gamma) / s + gamma * ((1.0 - r * r) / s) ** 2


def r_min(gamma: float) -> float:
    """Radial minimizer of the three-mode energy density: 0 in the linear
    phase (gamma <= 1/5), sqrt((5 gamma - 1)/(3 gamma + 1)) in the bent phase."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    if gamma <= GAMMA_C:
        return 0.0
    return math.sqrt((5.0 * gamma - 1.0) / (3.0 * gamma + 1.0))


def energy_density_2mode(point: MeanFieldPoint, gamma: float) -> float:
    """h(phi, z) = -(1-gamma)(1+z)/2 - gamma (1-z^2) cos^2(phi)."""
    cp = math.cos(point.phi)
    return (-(1.0 - gamma) * (1.0 + point.z) / 2.0
            - gamma * (1.0 - point.z ** 2) * cp * cp)


def flow_rhs(phi: float, z: float, gamma: float) -> tuple[float, float]:
    """Canonical flow (phi_dot, z_dot) = (dh/dz, -dh/dphi)."""
    cp, sp_ = math.cos(phi), math.sin(phi)
    phi_dot = -(1.0 - gamma) / 2.0 + 2.0 * gamma * z * cp * cp
    z_dot = -2.0 * gamma * (1.0 - z * z) * sp_ * cp
    return phi_dot, z_dot


def stationary_points(gamma: float) -> list[StationaryPoint]:
    """Zeros of the flow with Hessian classification.

    Empty for gamma < 1/5.  For 1/5 <= gamma <= 1: saddles at z = 1 with
    cos(phi) = +-sqrt(1/gamma - 1)/2, minima at z = (1/gamma - 1)/4 with
    cos(phi) = +-1.  At gamma = 1 the two families merge into degenerate
    lines including cos(phi) = 0.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    out: list[StationaryPoint] = []
    if gamma < GAMMA_C:
        return out
    # z = 1 family: cos^2(phi) = (1 - gamma)/(4 gamma) <= 1 iff gamma >= 1/5
    c2 = (1.0 - gamma) / (4.0 * gamma)
    if c2 <= 1.0 + 1e-15:
        c = math.sqrt(min(c2, 1.0))
        for cp in ({c, -c} if c > 0 else {0.0}):
            phi = math.acos(cp)
            for p in ({phi, 2.0 * math.pi - phi} if 0 < phi < math.pi else {phi}):
                pt = MeanFieldPoint(p, 1.0)
                kind = StationaryKind.DEGENERATE if gamma == 1.0 else StationaryKind.SADDLE
                out.append(StationaryPoint(pt, kind, energy_density_2mode(pt, gamma)))
    # cos(phi) = +-1 family: z = (1/gamma - 1)/4
    z0 = (1.0 / gamma - 1.0) / 4.0
    if z0 <= 1.0 + 1e-15:
        for p in (0.0, math.pi):
            pt = MeanFieldPoint(p, min(z0, 1.0))
            kind = StationaryKind.DEGENERATE if gamma == 1.0 else StationaryKind.MINIMUM
            out.append(StationaryPoint(pt, kind, energy_density_2mode(pt, gamma)))
    if gamma == 1.0:
        # whole cos(phi) = 0 lines are stationary; report representatives
        for p in (math.pi / 2.0, 3.0 * math.pi / 2.0):
            pt = MeanFieldPoint(p, 0.0)
            out.append(StationaryPoint(pt, StationaryKind.DEGENERATE,
                                       energy_density_2mode(pt, gamma)))
    return out


def integrate_flow(start: MeanFieldPoint, gamma: float, t_span: float,
                   max_step: float = 0.1, rtol: float = 1e-10,
                   atol: float = 1e-12, n_points: int = 2001) -> Trajectory:
    """Integrate the conservative flow from ``start`` over [0, t_span]."""
    eta = energy_density_2mode(start, gamma)

    def rhs(_t, y):
        return flow_rhs(y[0], y[1], gamma)

    ts = np.linspace(0.0, t_span, n_points)
    sol = solve_ivp(rhs, (0.0, t_span), [start.phi, start.z], t_eval=ts,
                    method="DOP853", max_step=max_step, rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"flow integration failed: {sol.message}")
    phi, z = sol.y
    z = np.clip(z, -1.0, 1.0)  # round-off can leave the strip by ~1e-13
    return Trajectory(phi=phi, z=z, energy=eta, kind=_classify_energy(eta, gamma))


def _min_energy(gamma: float) -> float:
    if gamma < GAMMA_C:
        return -(1.0 - gamma)
    return -(3.0 * gamma + 1.0) ** 2 / (16.0 * gamma)


def level_set(eta: float, gamma: float, resolution: int = 1024) -> list[Trajectory]:
    """Contours of h(phi, z) = eta on [0, 2 pi] x [-1, 1] via marching
    squares; each connected contour becomes one Trajectory."""
    lo = _min_energy(gamma)
    if not (lo - 1e-12 <= eta <= 1e-12):
        raise ValueError(f"eta = {eta} outside the attainable range [{lo}, 0]")
    phi = np.linspace(0.0, 2.0 * np.pi, resolution)
    z = np.linspace(-1.0, 1.0, resolution)
    pp, zz = np.meshgrid(phi, z, indexing="ij")
    h = (-(1.0 - gamma) * (1.0 + zz) / 2.0 - gamma * (1.0 - zz ** 2) * np.cos(pp) ** 2)
    kind = _classify_energy(eta, gamma)
    out = []
    for contour in measure.find_contours(h, eta):
        c_phi = contour[:, 0] * (2.0 * np.pi / (resolution - 1))
        c_z = contour[:, 1] * (2.0 / (resolution - 1)) - 1.0
        out.append(Trajectory(phi=c_phi, z=c_z, energy=eta, kind=kind))
    return out


def separatrix(gamma: float, resolution: int = 1024) -> list[Trajectory]:
    """The critical level set eta = -(1-gamma); only exists for gamma > 1/5."""
    if gamma <= GAMMA_C:
        raise ValueError("the separatrix exists only for gamma > 1/5")
    return level_set(-(1.0 - gamma), gamma, resolution)


def radius_function(theta: float, n_total: int) -> float:
    """R(theta, N) = tan(theta/2) sum_k sqrt(N - k) c_k(theta)^2 with
    binomial weights c_k^2 = C(N,k) sin^{2k} cos^{2(N-k)}(theta/2),
    evaluated in log space."""
    if theta == 0.0:
        return 0.0
    half = 0.5 * theta
    s2, c2 = math.sin(half) ** 2, math.cos(half) ** 2
    k = np.arange(n_total + 1, dtype=float)
    with np.errstate(divide="ignore"):
        log_w = (gammaln(n_total + 1) - gammaln(k + 1) - gammaln(n_total - k + 1)
                 + k * np.log(s2) + (n_total - k) * (np.log(c2) if c2 > 0 else -np.inf))
    log_w[np.isnan(log_w)] = -np.inf
    weights = np.exp(log_w)
    return math.tan(half) * float(np.sum(np.sqrt(n_total - k) * weights))


def theta_max(n_total: int) -> float:
    """Angle maximizing R(theta, N); the planar mapping is N-insensitive
    only for theta below this value (no closed form)."""
    res = minimize_scalar(lambda th: -radius_function(th, n_total),
                          bounds=(1e-6, np.pi - 1e-6), method="bounded",
                          options={"xatol": 1e-10})
    return float(res.x)


def to_phase_space(points, n_total: int, eta: float | None = None) -> np.ndarray:
    """Map (phi, z) points to the plane: X = cos(phi) R, P_X = sin(phi) R
    with theta = arccos(z).  Returns an (n, 2) array."""
    pts = [(p.phi, p.z) if isinstance(p, MeanFieldPoint) else (p[0], p[1])
           for p in points]
    out = np.empty((len(pts), 2))
    for i, (phi, z) in enumerate(pts):
        r = radius_function(math.acos(max(-1.0, min(1.0, z))), n_total)
        out[i] = (math.cos(phi) * r, math.sin(phi) * r)
    return out


def dump_trajectories_csv(trajectories, path) -> None:
    """(phi, z, eta, kind) rows, one block per trajectory."""
    with open(path, "w") as f:
        f.write("phi,z,eta,kind\n")
        for tr in trajectories:
            for phi, z in zip(tr.phi, tr.z):
                f.write(f"{phi:.17g},{z:.17g},{tr.energy:.17g},{tr.kind.value}\n")


def dump_phase_space_csv(curves, path) -> None:
    """(X, P_X, eta) rows for mapped curves given as (points_array, eta)."""
    with open(path, "w") as f:
        f.write("X,P_X,eta\n")
        for xy, eta in curves:
            for x, p in xy:
                f.write(f"{x:.17g},{p:.17g},{eta:.17g}\n")

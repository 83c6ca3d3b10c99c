"""Hamiltonian factory and spectra.

Every Hamiltonian used in the study is produced here:

* ``essential``     -- (1-gamma) n  -  gamma/(N-1 or N) W^2
* ``general``       -- E0 + eps n + alpha n(n+1) + beta l^2 + A W^2
* ``chain1``        -- E0 + eps n + alpha n(n+1) + beta l^2   (U(3)>U(2)>SO(2))
* ``chain2``        -- E0 + beta l^2 + A W^2                  (U(3)>SO(3)>SO(2))
* ``spinor_rotated``-- -((1-gamma)/gamma) N0 - W^2 / N  (the rotating-frame
                       spinor generator; the pi/2 rotation of mode 0 turns
                       J^2 into W^2, so the factory uses W^2 directly)
* ``n0_only``       -- -alpha N0
* ``low_depletion`` -- H_x + H_y with H_j = -2 N_j + tau_j^2 + tau_j^+2,
                       gamma-independent by construction

The closed-form eigenvalues of the two dynamical-symmetry chains are
  E_I  = E0 + eps n + alpha n(n+1) + beta l^2,   n<=N, l=-n,-n+2,...,n
  E_II = E0 + beta l^2 + A w(w+1),   w=N,N-2,...,(1 or 0), l=-w,...,w
and serve as oracles for the diagonalized chain Hamiltonians.

Sign caveat: the main text writes the essential Hamiltonian with a minus
on the W^2 term while the appendix version carries a plus.  The minus sign
reproduces the published spectrum structure and is the default; it is
exposed as ``ModelParams.w2_sign``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.sparse as sp

from . import algebra
from .fock import Convention, FockBasis

__all__ = [
    "HamiltonianKind",
    "Normalization",
    "ChainCoeffs",
    "ModelParams",
    "build",
    "low_depletion_parts",
    "low_depletion_single_mode",
    "low_depletion_nx",
    "chain_eigenvalues",
    "chain1_levels",
    "chain2_levels",
    "spectral_decomposition",
    "spectrum_scan",
    "DEFAULT_DENSE_CAP",
]

DEFAULT_DENSE_CAP = 8192


class HamiltonianKind(Enum):
    ESSENTIAL = "essential"
    GENERAL = "general"
    CHAIN1 = "chain1"
    CHAIN2 = "chain2"
    SPINOR_ROTATED = "spinor_rotated"
    N0_ONLY = "n0_only"
    LOW_DEPLETION = "low_depletion"


class Normalization(Enum):
    """Divisor of the W^2 / J^2 term: N-1 for the vibron form, N for the
    spinor form.  The two yield affinely related spectra."""
    N_MINUS_1 = "n_minus_1"
    N = "n"


@dataclass(frozen=True)
class ChainCoeffs:
    e0: float = 0.0
    epsilon: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    a: float = 0.0


@dataclass(frozen=True)
class ModelParams:
    gamma: float
    n_total: int
    normalization: Normalization | None = None
    chain_coeffs: ChainCoeffs = field(default_factory=ChainCoeffs)
    alpha_n0: float = 1.0
    w2_sign: float = -1.0

    def __post_init__(self):
        if not (0.0 <= self.gamma <= 1.0):
            raise ValueError("gamma must lie in [0, 1]")
        if self.n_total < 0:
            raise ValueError("n_total must be non-negative")

    @property
    def q_over_c(self) -> float:
        """Quadratic Zeeman ratio realizing this gamma: q/c = 2(1-gamma)/gamma."""
        if self.gamma <= 0.0:
            raise ValueError("q/c is defined only for gamma > 0")
        return 2.0 * (1.0 - self.gamma) / self.gamma

    def divisor(self, kind: HamiltonianKind) -> float:
        norm = self.normalization
        if norm is None:
            norm = Normalization.N if kind is HamiltonianKind.SPINOR_ROTATED \
                else Normalization.N_MINUS_1
        return float(self.n_total - 1 if norm is Normalization.N_MINUS_1 else self.n_total)


def _w2_on(basis: FockBasis) -> algebra.SparseOperator:
    """W^2 on either a full circular basis or a single fixed_l block."""
    if basis.l_range is not None and basis.l_range[0] == basis.l_range[1]:
        return algebra.w2_fixed_l(basis.n_total, basis.l_range[0])
    if basis.l_range is not None:
        raise ValueError("W^2 on multi-l bands is not assembled directly; "
                         "use per-block operators")
    return algebra.u3_generators(basis)["W2"]


def _diag(basis: FockBasis, values: np.ndarray) -> algebra.SparseOperator:
    return algebra.SparseOperator(basis, basis, sp.diags(values.astype(np.complex128)).tocsr(),
                                  hermitian=True)


def build(kind: HamiltonianKind, params: ModelParams, basis: FockBasis) -> algebra.SparseOperator:
    """Assemble the requested Hamiltonian on the given basis/block."""
    if basis.convention is not Convention.CIRCULAR:
        raise ValueError("Hamiltonians are built in the circular convention")
    if basis.n_total != params.n_total:
        raise ValueError("basis and params disagree on N")
    occ = basis.occupations()
    n_tau = (occ[:, 0] + occ[:, 2]).astype(float)
    n_zero = occ[:, 1].astype(float)
    l_val = (occ[:, 0] - occ[:, 2]).astype(float)
    c = params.chain_coeffs

    if kind is HamiltonianKind.N0_ONLY:
        return _diag(basis, -params.alpha_n0 * n_zero)
    if kind is HamiltonianKind.CHAIN1:
        return _diag(basis, c.e0 + c.epsilon * n_tau + c.alpha * n_tau * (n_tau + 1)
                     + c.beta * l_val**2)
    if kind is HamiltonianKind.CHAIN2:
        w2 = _w2_on(basis)
        diag = _diag(basis, c.e0 + c.beta * l_val**2)
        return diag + c.a * w2
    if kind is HamiltonianKind.GENERAL:
        w2 = _w2_on(basis)
        diag = _diag(basis, c.e0 + c.epsilon * n_tau + c.alpha * n_tau * (n_tau + 1)
                     + c.beta * l_val**2)
        return diag + c.a * w2
    if kind is HamiltonianKind.ESSENTIAL:
        w2 = _w2_on(basis)
        diag = _diag(basis, (1.0 - params.gamma) * n_tau)
        return diag + (params.w2_sign * params.gamma / params.divisor(kind)) * w2
    if kind is HamiltonianKind.SPINOR_ROTATED:
        if params.gamma == 0.0:
            raise ValueError("spinor_rotated is singular at gamma = 0; "
                             "use the n0_only protocol for the early-time limit")
        w2 = _w2_on(basis)
        diag = _diag(basis, -(1.0 - params.gamma) / params.gamma * n_zero)
        return diag + (-1.0 / params.divisor(kind)) * w2
    if kind is HamiltonianKind.LOW_DEPLETION:
        # H_x + H_y = -2 n - 2 (tau+ tau- + tau+^+ tau-^+) in circular modes;
        # pair creation does not conserve N, so a tower basis is required and
        # the operator is truncated at the tower cap (strict=False).
        if not basis.tower:
            raise ValueError("low_depletion does not conserve N; build it on a "
                             "tower basis")
        mono = [(-2.0, [(0, "c"), (0, "a")]),
                (-2.0, [(2, "c"), (2, "a")]),
                (-2.0, [(0, "a"), (2, "a")]),
                (-2.0, [(0, "c"), (2, "c")])]
        return algebra.build_operator(mono, basis, strict=False, hermitian=True)
    raise ValueError(f"unknown Hamiltonian kind {kind}")


def low_depletion_single_mode(n_cut: int) -> sp.csr_matrix:
    """H_j = -2 n + a^2 + a^+2 on one cartesian mode truncated at n_cut."""
    n = np.arange(n_cut + 1, dtype=float)
    pair = np.sqrt(n[2:] * n[1:-1])  # <m| a^2 |m+2> = sqrt((m+2)(m+1))
    return (sp.diags(-2.0 * n) + sp.diags(pair, 2) + sp.diags(pair, -2)).tocsr()


def low_depletion_parts(n_cut: int) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """(H_x x 1, 1 x H_y) on the product of two independently truncated
    cartesian modes; the factors commute exactly."""
    h = low_depletion_single_mode(n_cut)
    eye = sp.identity(n_cut + 1, format="csr")
    return sp.kron(h, eye, format="csr"), sp.kron(eye, h, format="csr")


def low_depletion_nx(times: np.ndarray, n_cut: int = 200) -> np.ndarray:
    """<N_x>(t) for vacuum evolved under the single-mode H_x.

    This is the analytic two-mode-squeezing prediction (it tends to 4 t^2 as
    n_cut grows); used to benchmark the full quench at early times.
    """
    h = low_depletion_single_mode(n_cut).toarray()
    evals, evecs = np.linalg.eigh(h)
    c0 = evecs.conj().T[:, 0]  # overlaps with vacuum
    n_diag = np.arange(n_cut + 1, dtype=float)
    out = np.empty(len(times))
    for i, t in enumerate(np.asarray(times, dtype=float)):
        psi = evecs @ (np.exp(-1j * evals * t) * c0)
        out[i] = float(np.real(np.vdot(psi, n_diag * psi)))
    return out


def chain_eigenvalues(kind: HamiltonianKind, quantum_numbers: dict, coeffs: ChainCoeffs,
                      n_total: int | None = None) -> float:
    """Closed-form chain energies; quantum numbers are bounds-checked."""
    if kind is HamiltonianKind.CHAIN1:
        n, l = quantum_numbers["n"], quantum_numbers["l"]
        if n_total is not None and not (0 <= n <= n_total):
            raise ValueError(f"n={n} out of range for N={n_total}")
        if abs(l) > n or (n - l) % 2 != 0:
            raise ValueError(f"l={l} invalid for n={n} (l = -n, -n+2, ..., n)")
        return coeffs.e0 + coeffs.epsilon * n + coeffs.alpha * n * (n + 1) + coeffs.beta * l**2
    if kind is HamiltonianKind.CHAIN2:
        if n_total is None:
            raise ValueError("chain2 needs the total N")
        if "omega" in quantum_numbers:
            omega = quantum_numbers["omega"]
            if (n_total - omega) % 2 != 0:
                raise ValueError("omega must share the parity of N")
            v = (n_total - omega) // 2
        else:
            v = quantum_numbers["v"]
            omega = n_total - 2 * v
        l = quantum_numbers["l"]
        if not (0 <= v <= n_total // 2):
            raise ValueError(f"v={v} out of range")
        if abs(l) > omega:
            raise ValueError(f"l={l} exceeds omega={omega}")
        return coeffs.e0 + coeffs.beta * l**2 + coeffs.a * omega * (omega + 1)
    raise ValueError("closed-form spectra exist for chain1 and chain2 only")


def chain1_levels(n_total: int, coeffs: ChainCoeffs):
    """All (n, l, energy) of chain I; l steps by 2 within [-n, n]."""
    for n in range(n_total + 1):
        for l in range(-n, n + 1, 2):
            yield n, l, chain_eigenvalues(HamiltonianKind.CHAIN1, {"n": n, "l": l},
                                          coeffs, n_total)


def chain2_levels(n_total: int, coeffs: ChainCoeffs):
    """All (omega, l, energy) of chain II; omega = N, N-2, ..., l in [-w, w]."""
    for omega in range(n_total % 2, n_total + 1, 2):
        for l in range(-omega, omega + 1):
            yield omega, l, chain_eigenvalues(HamiltonianKind.CHAIN2,
                                              {"omega": omega, "l": l}, coeffs, n_total)


def spectral_decomposition(h: algebra.SparseOperator,
                           dense_cap: int = DEFAULT_DENSE_CAP) -> tuple[np.ndarray, np.ndarray]:
    """Dense eigendecomposition of a Hermitian operator.

    Returns ascending eigenvalues and orthonormal eigenvector columns.
    Blocks above ``dense_cap`` are refused; filter to an l block first.
    """
    if h.domain != h.codomain:
        raise ValueError("spectral decomposition needs a square operator")
    dim = h.domain.dim
    if dim > dense_cap:
        raise ValueError(f"dimension {dim} exceeds dense-solver cap {dense_cap}; "
                         "restrict to a magnetization block")
    dense = h.to_dense()
    dev = np.max(np.abs(dense - dense.conj().T)) if dim else 0.0
    if dev > 1e-10:
        raise ValueError(f"operator is not hermitian (deviation {dev:.3e})")
    evals, evecs = np.linalg.eigh(dense)
    return evals, evecs


def spectrum_scan(kind: HamiltonianKind, n_total: int, l: int, gamma_grid,
                  normalization: Normalization | None = None) -> list[tuple[float, np.ndarray]]:
    """Per-gamma normalized excitation spectra (E_k - E_0)/N on a fixed_l
    block, the Fig.-2-style dataset."""
    basis = FockBasis.fixed_l(n_total, l)
    out = []
    for gamma in gamma_grid:
        if not (0.0 <= gamma <= 1.0):
            raise ValueError("gamma grid must lie within [0, 1]")
        params = ModelParams(gamma=float(gamma), n_total=n_total,
                             normalization=normalization)
        evals, _ = spectral_decomposition(build(kind, params, basis))
        out.append((float(gamma), (evals - evals[0]) / n_total))
    return out

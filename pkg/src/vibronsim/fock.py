"""Bosonic Fock bases for three modes at fixed total particle number.

Two labelling conventions are supported for the three single-particle modes:

* ``circular``:  slots ``(n_plus, n_zero, n_minus)`` for the modes
  ``tau_+, sigma, tau_-`` (equivalently ``a_+1, a_0, a_-1`` in the spinor
  picture).  The magnetization ``l = n_plus - n_minus`` labels conserved
  blocks.
* ``cartesian``: slots ``(n_x, n_zero, n_y)`` for ``tau_x, sigma, tau_y``.

Basis ordering is lexicographic, ascending in ``(n1, n0)`` where ``n1`` is
the first slot; ``n2 = N - n1 - n0`` is implied.  This ordering is part of
the contract: sparse matrices built on the same basis are reproducible
bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "Convention",
    "FockBasis",
    "QuantumState",
    "SingleModeState",
    "full_dimension",
    "project_two_mode",
    "convert_convention",
]

NORM_TOL = 1e-12


class Convention(Enum):
    CIRCULAR = "circular"
    CARTESIAN = "cartesian"


def full_dimension(n_total: int) -> int:
    """Number of occupation triples at fixed total N (stars and bars)."""
    return (n_total + 1) * (n_total + 2) // 2


@dataclass(frozen=True)
class FockBasis:
    """Enumerated occupation triples, immutable after construction.

    ``l_range`` is ``None`` for the full space, or an inclusive
    ``(l_min, l_max)`` band of magnetization values (circular only).
    ``tower=True`` enumerates all totals ``0..n_total`` instead of the
    fixed-N shell; it exists for canonical-commutator checks only.
    """

    n_total: int
    convention: Convention
    l_range: tuple[int, int] | None = None
    tower: bool = False
    states: tuple[tuple[int, int, int], ...] = field(init=False, compare=False, repr=False)
    _index: dict[tuple[int, int, int], int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.n_total < 0:
            raise ValueError("n_total must be non-negative")
        if self.l_range is not None:
            if self.convention is not Convention.CIRCULAR:
                raise ValueError("magnetization blocks require the circular convention")
            lmin, lmax = self.l_range
            if lmin > lmax:
                raise ValueError("empty l band")
            if abs(lmin) > self.n_total or abs(lmax) > self.n_total:
                raise ValueError(f"|l| cannot exceed N={self.n_total}")
        states = []
        totals = range(self.n_total + 1) if self.tower else (self.n_total,)
        for total in totals:
            for n1 in range(total + 1):
                for n0 in range(total - n1 + 1):
                    n2 = total - n1 - n0
                    if self.l_range is not None:
                        l = n1 - n2
                        if not (self.l_range[0] <= l <= self.l_range[1]):
                            continue
                    states.append((n1, n0, n2))
        object.__setattr__(self, "states", tuple(states))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(states)})

    @classmethod
    def full(cls, n_total: int, convention: Convention = Convention.CIRCULAR) -> "FockBasis":
        return cls(n_total, convention)

    @classmethod
    def fixed_l(cls, n_total: int, l: int) -> "FockBasis":
        return cls(n_total, Convention.CIRCULAR, l_range=(l, l))

    @classmethod
    def l_band(cls, n_total: int, l_min: int, l_max: int) -> "FockBasis":
        return cls(n_total, Convention.CIRCULAR, l_range=(l_min, l_max))

    @classmethod
    def tower_basis(cls, n_max: int, convention: Convention = Convention.CIRCULAR) -> "FockBasis":
        return cls(n_max, convention, tower=True)

    @property
    def dim(self) -> int:
        return len(self.states)

    def index_of(self, state: tuple[int, int, int]) -> int:
        return self._index[state]

    def contains(self, state: tuple[int, int, int]) -> bool:
        return state in self._index

    def magnetization(self, state: tuple[int, int, int]) -> int:
        if self.convention is not Convention.CIRCULAR:
            raise ValueError("magnetization is defined in the circular convention")
        return state[0] - state[2]

    def occupations(self) -> np.ndarray:
        """(dim, 3) integer array of the enumerated triples."""
        return np.asarray(self.states, dtype=np.int64)


@dataclass
class QuantumState:
    """Normalized complex amplitude vector bound to a FockBasis."""

    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.basis.dim,):
            raise ValueError("amplitude vector does not match basis dimension")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state not normalized: |psi| = {norm}")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def number_state(cls, basis: FockBasis, occ: tuple[int, int, int]) -> "QuantumState":
        vec = np.zeros(basis.dim, dtype=np.complex128)
        vec[basis.index_of(occ)] = 1.0
        return cls(basis, vec)


@dataclass
class SingleModeState:
    """State of the relabelled single-mode basis {|n_x> : 0 <= n_x <= N}.

    Produced by :func:`project_two_mode`; ``retained_weight`` is the
    probability carried by the n_y = 0 slice before renormalization.
    """

    n_max: int
    amplitudes: np.ndarray
    retained_weight: float = 1.0

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.n_max + 1,):
            raise ValueError("amplitude vector must have length n_max + 1")


def project_two_mode(state: QuantumState) -> SingleModeState:
    """Slice out the n_y = 0 subspace of a cartesian-convention state.

    The basis states |n_x, N - n_x, 0> are relabelled to |n_x> and the
    slice is renormalized; the discarded probability weight is reported via
    ``retained_weight``.
    """
    basis = state.basis
    if basis.convention is not Convention.CARTESIAN:
        raise ValueError("project_two_mode expects a cartesian-convention state")
    if basis.tower or basis.l_range is not None:
        raise ValueError("project_two_mode expects the full fixed-N basis")
    n = basis.n_total
    out = np.zeros(n + 1, dtype=np.complex128)
    for nx in range(n + 1):
        out[nx] = state.amplitudes[basis.index_of((nx, n - nx, 0))]
    weight = float(np.sum(np.abs(out) ** 2))
    if weight < NORM_TOL:
        raise ValueError("two-mode subspace is totally depleted (retained weight ~ 0)")
    return SingleModeState(n, out / np.sqrt(weight), retained_weight=weight)


# Single-particle change of basis between circular and cartesian modes.
# Columns are the cartesian creation operators expanded over the circular
# slots (tau_+, sigma, tau_-):
#   tau_x^+ = (-tau_+^+ + tau_-^+)/sqrt(2),  tau_y^+ = i(tau_+^+ + tau_-^+)/sqrt(2)
_CIRC_TO_CART = np.array(
    [
        [-1 / np.sqrt(2), 0.0, 1j / np.sqrt(2)],
        [0.0, 1.0, 0.0],
        [1 / np.sqrt(2), 0.0, 1j / np.sqrt(2)],
    ],
    dtype=np.complex128,
)


def single_particle_rotation(src: Convention, dst: Convention) -> np.ndarray:
    """3x3 unitary whose columns express dst creation ops over src slots."""
    if src == dst:
        return np.eye(3, dtype=np.complex128)
    if src is Convention.CIRCULAR and dst is Convention.CARTESIAN:
        return _CIRC_TO_CART.copy()
    return _CIRC_TO_CART.conj().T.copy()


def convert_convention(state: QuantumState, to: Convention) -> QuantumState:
    """Re-express a full-basis state in the other mode convention.

    The single-particle rotation is lifted to Fock space as the exponential
    of its quadratic generator, which keeps the construction exact to solver
    tolerance and reuses the operator machinery.
    """
    from . import algebra  # deferred: algebra imports this module

    basis = state.basis
    if basis.convention is to:
        return QuantumState(basis, state.amplitudes.copy())
    if basis.l_range is not None:
        raise ValueError("conversion from a block-filtered basis leaves the block; "
                         "convert from the full basis instead")
    target = FockBasis(basis.n_total, to, tower=basis.tower)
    amps = algebra.lift_mode_rotation(single_particle_rotation(basis.convention, to),
                                      basis, state.amplitudes)
    norm = np.linalg.norm(amps)
    return QuantumState(target, amps / norm)

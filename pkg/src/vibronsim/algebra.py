"""Sparse operator algebra on three-mode Fock bases.

Builds ladder operators, the nine U(3) generators, the SU(3) generator set,
the three SU(2) subalgebras (mode x, mode y, L), and the pi/2 rotation of
mode 0.  Composite Casimir-type operators (W^2, J^2) are assembled from
products of generator matrices so the cross-mapping identities between the
two generator sets remain genuine checks.

Operators carry explicit domain and codomain bases; l-changing generators
can therefore act between magnetization blocks without materializing the
full space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import logm
from scipy.sparse.linalg import expm_multiply

from .fock import Convention, FockBasis, QuantumState

__all__ = [
    "SparseOperator",
    "ladder",
    "quadratic",
    "build_operator",
    "u3_generators",
    "su3_generators",
    "su2_subalgebra",
    "rotation_pi_half_mode0",
    "number_operator",
    "d_block",
    "w2_fixed_l",
    "lift_mode_rotation",
]

HERMITIAN_TOL = 1e-12

# annihilation-operator combinations over the circular slots (tau+, sigma, tau-)
_TAU_X_CIRC = np.array([-1, 0, 1], dtype=np.complex128) / np.sqrt(2)
_TAU_Y_CIRC = np.array([-1j, 0, -1j], dtype=np.complex128) / np.sqrt(2)
_SIGMA = np.array([0, 1, 0], dtype=np.complex128)

_MODE_SLOTS = {
    Convention.CIRCULAR: {"plus": 0, "zero": 1, "minus": 2},
    Convention.CARTESIAN: {"x": 0, "zero": 1, "y": 2},
}


@dataclass
class SparseOperator:
    """Sparse complex matrix bound to explicit domain/codomain bases."""

    domain: FockBasis
    codomain: FockBasis
    matrix: sp.csr_matrix
    hermitian: bool = False

    def __post_init__(self):
        self.matrix = sp.csr_matrix(self.matrix)
        if self.matrix.shape != (self.codomain.dim, self.domain.dim):
            raise ValueError("matrix shape does not match bases")
        if self.hermitian:
            if self.domain != self.codomain:
                raise ValueError("hermitian flag requires domain == codomain")
            dev = _max_abs(self.matrix - self.matrix.getH())
            if dev > HERMITIAN_TOL:
                raise ValueError(f"operator flagged hermitian deviates by {dev:.3e}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def dagger(self) -> "SparseOperator":
        return SparseOperator(self.codomain, self.domain, self.matrix.getH().tocsr(),
                              hermitian=self.hermitian)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        if self.domain != other.codomain:
            raise ValueError("operator composition: basis mismatch")
        return SparseOperator(other.domain, self.codomain,
                              (self.matrix @ other.matrix).tocsr())

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError("operator sum: basis mismatch")
        return SparseOperator(self.domain, self.codomain, self.matrix + other.matrix,
                              hermitian=self.hermitian and other.hermitian)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "SparseOperator":
        herm = self.hermitian and abs(complex(scalar).imag) == 0.0
        return SparseOperator(self.domain, self.codomain, scalar * self.matrix,
                              hermitian=herm)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.matrix @ vec

    def expectation(self, state: QuantumState | np.ndarray) -> complex:
        vec = state.amplitudes if isinstance(state, QuantumState) else np.asarray(state)
        if self.domain != self.codomain:
            raise ValueError("expectation requires domain == codomain")
        return complex(np.vdot(vec, self.matrix @ vec))

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def dump_coo(self, path) -> None:
        """Debug dump as a coordinate-list text file: row col re im."""
        coo = self.matrix.tocoo()
        with open(path, "w") as fh:
            for r, c, v in zip(coo.row, coo.col, coo.data):
                fh.write(f"{r} {c} {v.real:.17g} {v.imag:.17g}\n")


def _max_abs(mat: sp.spmatrix) -> float:
    mat = sp.csr_matrix(mat)
    return float(np.max(np.abs(mat.data))) if mat.nnz else 0.0


def max_deviation(a: SparseOperator, b: SparseOperator) -> float:
    """max |A - B| over entries; the operators must share their bases."""
    if a.domain != b.domain or a.codomain != b.codomain:
        raise ValueError("deviation: basis mismatch")
    return _max_abs(a.matrix - b.matrix)


def mode_slot(convention: Convention, mode: str) -> int:
    slots = _MODE_SLOTS[convention]
    if mode not in slots:
        raise ValueError(f"mode {mode!r} absent from the {convention.value} convention")
    return slots[mode]


def build_operator(monomials, domain: FockBasis, codomain: FockBasis | None = None,
                   strict: bool = True, hermitian: bool = False) -> SparseOperator:
    """Assemble a sparse operator from ladder-operator monomials.

    ``monomials`` is a list of ``(coeff, ops)`` where ``ops`` is a sequence
    of ``(slot, kind)`` with kind 'c' (create) or 'a' (annihilate), written
    in operator order (rightmost factor acts first).  With ``strict`` set,
    an image state missing from the codomain raises; pass ``strict=False``
    only where truncation is intended (e.g. tower tops).
    """
    codomain = domain if codomain is None else codomain
    rows, cols, vals = [], [], []
    for col, occ in enumerate(domain.states):
        for coeff, ops in monomials:
            amp = complex(coeff)
            state = list(occ)
            dead = False
            for slot, kind in reversed(ops):
                n = state[slot]
                if kind == "a":
                    if n == 0:
                        dead = True
                        break
                    amp *= np.sqrt(n)
                    state[slot] = n - 1
                elif kind == "c":
                    amp *= np.sqrt(n + 1)
                    state[slot] = n + 1
                else:
                    raise ValueError(f"unknown ladder kind {kind!r}")
            if dead or amp == 0.0:
                continue
            key = tuple(state)
            if not codomain.contains(key):
                if strict:
                    raise ValueError(f"image state {key} missing from codomain")
                continue
            rows.append(codomain.index_of(key))
            cols.append(col)
            vals.append(amp)
    mat = sp.csr_matrix((vals, (rows, cols)), shape=(codomain.dim, domain.dim),
                        dtype=np.complex128)
    mat.sum_duplicates()
    return SparseOperator(domain, codomain, mat, hermitian=hermitian)


def ladder(mode: str, kind: str, basis: FockBasis,
           codomain: FockBasis | None = None) -> SparseOperator:
    """Single creation or annihilation operator.

    On a tower basis the operator maps the basis into itself (the top shell
    truncates for 'create').  On a fixed-N basis a codomain at N±1 must be
    supplied.
    """
    slot = mode_slot(basis.convention, mode)
    op_kind = {"create": "c", "annihilate": "a"}[kind]
    if codomain is None:
        if not basis.tower:
            raise ValueError("ladder on a fixed-N basis needs an explicit codomain")
        codomain = basis
    return build_operator([(1.0, [(slot, op_kind)])], basis, codomain, strict=False)


def quadratic(coeff: np.ndarray, domain: FockBasis, codomain: FockBasis | None = None,
              strict: bool = True) -> SparseOperator:
    """Number-conserving bilinear  sum_ij coeff[i, j] a_i^+ a_j."""
    coeff = np.asarray(coeff, dtype=np.complex128)
    monomials = [(coeff[i, j], [(i, "c"), (j, "a")])
                 for i in range(3) for j in range(3) if coeff[i, j] != 0.0]
    herm = (codomain is None or codomain == domain) and \
        bool(np.allclose(coeff, coeff.conj().T, atol=1e-15))
    return build_operator(monomials, domain, codomain, strict=strict, hermitian=herm)


def _bilinear_matrix(create_combo: np.ndarray, annihilate_combo: np.ndarray) -> np.ndarray:
    """Coefficient matrix of  (sum_i v_i a_i)^+ (sum_j w_j a_j)."""
    return np.outer(np.conj(create_combo), annihilate_combo)


def number_operator(mode: str, basis: FockBasis,
                    codomain: FockBasis | None = None) -> SparseOperator:
    slot = mode_slot(basis.convention, mode)
    coeff = np.zeros((3, 3), dtype=np.complex128)
    coeff[slot, slot] = 1.0
    return quadratic(coeff, basis, codomain)


def u3_generators(basis: FockBasis) -> dict[str, SparseOperator]:
    """The U(3) generator set {n, l, Q±, n_s, D±, R±} plus the Casimir W^2.

    W^2 = (D+ D- + D- D+)/2 + l^2 is formed from matrix products of the
    generators, not hand-coded matrix elements.
    """
    if basis.convention is not Convention.CIRCULAR:
        raise ValueError("U(3) generators are built in the circular convention")
    q = lambda c: quadratic(np.asarray(c, dtype=np.complex128), basis)
    s2 = np.sqrt(2)
    ops = {
        "n": q([[1, 0, 0], [0, 0, 0], [0, 0, 1]]),
        "l": q([[1, 0, 0], [0, 0, 0], [0, 0, -1]]),
        "Q+": q([[0, 0, s2], [0, 0, 0], [0, 0, 0]]),
        "Q-": q([[0, 0, 0], [0, 0, 0], [s2, 0, 0]]),
        "ns": q([[0, 0, 0], [0, 1, 0], [0, 0, 0]]),
        # D+ = sqrt(2) (tau+^+ sigma - sigma^+ tau-)
        "D+": q([[0, s2, 0], [0, 0, -s2], [0, 0, 0]]),
        # D- = sqrt(2) (-tau-^+ sigma + sigma^+ tau+)
        "D-": q([[0, 0, 0], [s2, 0, 0], [0, -s2, 0]]),
        "R+": q([[0, s2, 0], [0, 0, s2], [0, 0, 0]]),
        "R-": q([[0, 0, 0], [s2, 0, 0], [0, s2, 0]]),
    }
    w2 = 0.5 * (ops["D+"] @ ops["D-"] + ops["D-"] @ ops["D+"]) + ops["l"] @ ops["l"]
    w2.hermitian = True
    ops["W2"] = w2
    return ops


def su3_generators(basis: FockBasis) -> dict[str, SparseOperator]:
    """SU(3) generators {Jx, Jy, Jz, Qxy, Qyz, Qzx, Y, Dxy} plus J^2 and
    the mode populations N0, N+1, N-1 (spinor naming: sigma <-> a_0)."""
    if basis.convention is not Convention.CIRCULAR:
        raise ValueError("SU(3) generators are built in the circular convention")
    q = lambda c: quadratic(np.asarray(c, dtype=np.complex128), basis)
    r2 = 1 / np.sqrt(2)
    ops = {
        # Jx = (sigma^+ tau+ + sigma^+ tau- + tau+^+ sigma + tau-^+ sigma)/sqrt(2)
        "Jx": q([[0, r2, 0], [r2, 0, r2], [0, r2, 0]]),
        # Jy = i(-sigma^+ tau+ + sigma^+ tau- + tau+^+ sigma - tau-^+ sigma)/sqrt(2)
        "Jy": q([[0, 1j * r2, 0], [-1j * r2, 0, 1j * r2], [0, -1j * r2, 0]]),
        "Jz": q([[1, 0, 0], [0, 0, 0], [0, 0, -1]]),
        "Qxy": q([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]]),
        # Qyz = i(-sigma^+ tau- + tau-^+ sigma + tau+^+ sigma - sigma^+ tau+)/sqrt(2)
        "Qyz": q([[0, 1j * r2, 0], [-1j * r2, 0, -1j * r2], [0, 1j * r2, 0]]),
        # Qzx = (-sigma^+ tau- - tau-^+ sigma + tau+^+ sigma + sigma^+ tau+)/sqrt(2)
        "Qzx": q([[0, r2, 0], [r2, 0, -r2], [0, -r2, 0]]),
        "Y": q(np.diag([1, -2, 1]) / np.sqrt(3)),
        "Dxy": q([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        "N0": q(np.diag([0, 1, 0])),
        "N+1": q(np.diag([1, 0, 0])),
        "N-1": q(np.diag([0, 0, 1])),
    }
    j2 = ops["Jx"] @ ops["Jx"] + ops["Jy"] @ ops["Jy"] + ops["Jz"] @ ops["Jz"]
    j2.hermitian = True
    ops["J2"] = j2
    return ops


def _su2_combos(which: str, convention: Convention):
    if convention is Convention.CARTESIAN:
        ex = np.array([1, 0, 0], dtype=np.complex128)
        ey = np.array([0, 0, 1], dtype=np.complex128)
        tau_x, tau_y, sigma = ex, ey, _SIGMA
    else:
        tau_x, tau_y, sigma = _TAU_X_CIRC, _TAU_Y_CIRC, _SIGMA
    if which == "mode_x":
        return sigma, tau_x
    if which == "mode_y":
        return sigma, tau_y
    if which == "L":
        if convention is Convention.CARTESIAN:
            # tau± over cartesian slots, inverted from the circular definition
            tau_p = np.array([-1, 0, 1j], dtype=np.complex128) / np.sqrt(2)
            tau_m = np.array([1, 0, 1j], dtype=np.complex128) / np.sqrt(2)
        else:
            tau_p = np.array([1, 0, 0], dtype=np.complex128)
            tau_m = np.array([0, 0, 1], dtype=np.complex128)
        return tau_p, tau_m
    raise ValueError(f"unknown SU(2) subalgebra {which!r}")


def su2_subalgebra(which: str, basis: FockBasis,
                   codomains: dict[str, FockBasis] | None = None,
                   axes: tuple[str, ...] = ("x", "y", "z")) -> dict[str, SparseOperator]:
    """SU(2) triple for 'mode_x', 'mode_y' or 'L', on either convention.

    Each triple is  A_x = (u^+ v + v^+ u)/2,  A_y = (u^+ v - v^+ u)/(2i),
    A_z = (u^+ u - v^+ v)/2  for the two single-particle combinations
    (u, v) of the subalgebra.  ``codomains`` optionally redirects members to
    a different (wider) block basis; ``axes`` restricts which members are
    assembled (on a magnetization block not all of them stay representable).
    """
    u, v = _su2_combos(which, basis.convention)
    codomains = codomains or {}
    mats = {
        "x": lambda: 0.5 * (_bilinear_matrix(u, v) + _bilinear_matrix(v, u)),
        "y": lambda: (_bilinear_matrix(u, v) - _bilinear_matrix(v, u)) / 2j,
        "z": lambda: 0.5 * (_bilinear_matrix(u, u) - _bilinear_matrix(v, v)),
    }
    return {axis: quadratic(mats[axis](), basis, codomains.get(axis))
            for axis in axes}


def rotation_pi_half_mode0(basis: FockBasis) -> SparseOperator:
    """The unitary U = exp(i pi N_0 / 2): diagonal phase i^{n_0}."""
    phases = np.array([1j ** occ[1] for occ in basis.states], dtype=np.complex128)
    return SparseOperator(basis, basis, sp.diags(phases).tocsr())


def d_block(n_total: int, l: int, direction: int) -> SparseOperator:
    """D+ (direction=+1) or D- (direction=-1) from the fixed_l(l) block of
    the circular basis into the fixed_l(l ± 1) block."""
    if direction not in (+1, -1):
        raise ValueError("direction must be ±1")
    src = FockBasis.fixed_l(n_total, l)
    dst = FockBasis.fixed_l(n_total, l + direction)
    s2 = np.sqrt(2)
    if direction == +1:
        coeff = np.array([[0, s2, 0], [0, 0, -s2], [0, 0, 0]], dtype=np.complex128)
    else:
        coeff = np.array([[0, 0, 0], [s2, 0, 0], [0, -s2, 0]], dtype=np.complex128)
    return quadratic(coeff, src, dst)


def w2_fixed_l(n_total: int, l: int) -> SparseOperator:
    """W^2 restricted to the fixed_l(l) block, assembled from D± block maps.

    W^2 = (D+ D- + D- D+)/2 + l^2; each product routes through the l -/+ 1
    block, which keeps the memory footprint linear in N.
    """
    block = FockBasis.fixed_l(n_total, l)
    acc = sp.csr_matrix((block.dim, block.dim), dtype=np.complex128)
    if abs(l - 1) <= n_total:
        acc = acc + 0.5 * (d_block(n_total, l - 1, +1) @ d_block(n_total, l, -1)).matrix
    if abs(l + 1) <= n_total:
        acc = acc + 0.5 * (d_block(n_total, l + 1, -1) @ d_block(n_total, l, +1)).matrix
    acc = acc + sp.identity(block.dim, dtype=np.complex128, format="csr") * float(l * l)
    # entries grow like N^2; symmetrize away the O(eps N^2) product round-off
    acc = 0.5 * (acc + acc.conj().T)
    return SparseOperator(block, block, acc.tocsr(), hermitian=True)


def lift_mode_rotation(v: np.ndarray, basis: FockBasis, amplitudes: np.ndarray) -> np.ndarray:
    """Amplitudes of a state re-expressed in the rotated single-particle basis.

    ``v`` has the target creation operators as columns over the source
    slots.  The Fock-space lift is exp(K) with K the quadratic generator of
    log(v); the converted amplitudes are exp(-K) psi read off in the source
    enumeration (which coincides with the target enumeration slot-for-slot).
    """
    k = logm(np.asarray(v, dtype=np.complex128))
    gen = quadratic(k, basis, strict=True)
    return expm_multiply(-gen.matrix, np.asarray(amplitudes, dtype=np.complex128))

"""Operator construction: ladder algebra, generator sets, block maps."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vibronsim import algebra
from vibronsim.fock import Convention, FockBasis, QuantumState


def commutator(a, b):
    return a.matrix @ b.matrix - b.matrix @ a.matrix


def max_abs(mat):
    mat = mat.tocsr()
    return float(np.max(np.abs(mat.data))) if mat.nnz else 0.0


def w2_on_pure_sigma_oracle(n):
    """Apply the ladder definitions of the D operators to |0, N, 0> by hand:
    D+ D- and D- D+ each contribute 2N, the magnetization term zero, so
    <W^2> = (2N + 2N)/2 = 2N."""
    return 2.0 * n


class TestLadder:
    def test_number_operator_eigenvalue(self):
        basis = FockBasis.full(5)
        ns = algebra.number_operator("zero", basis)
        s = QuantumState.number_state(basis, (1, 3, 1))
        assert ns.expectation(s) == pytest.approx(3.0)

    def test_canonical_commutator_on_tower(self):
        basis = FockBasis.tower_basis(6, Convention.CARTESIAN)
        c = algebra.ladder("x", "create", basis)
        a = algebra.ladder("x", "annihilate", basis)
        comm = (a.matrix @ c.matrix - c.matrix @ a.matrix).todense()
        # identity except on the truncated top shells
        interior = [i for i, s in enumerate(basis.states) if sum(s) < basis.n_total]
        for i in interior:
            assert abs(comm[i, i] - 1.0) < 1e-14

    def test_cross_mode_commutes(self):
        basis = FockBasis.tower_basis(5, Convention.CARTESIAN)
        tx = algebra.ladder("x", "annihilate", basis)
        sc = algebra.ladder("zero", "create", basis)
        comm = commutator(tx, sc).toarray()
        # away from the truncated top shell the commutator vanishes exactly
        interior = [i for i, s in enumerate(basis.states) if sum(s) < basis.n_total - 1]
        assert np.max(np.abs(comm[np.ix_(interior, interior)])) < 1e-14

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            algebra.mode_slot(Convention.CIRCULAR, "x")
        with pytest.raises(ValueError):
            algebra.mode_slot(Convention.CARTESIAN, "plus")


class TestU3Generators:
    @pytest.mark.parametrize("n", [2, 4])
    def test_d_commutator_gives_magnetization(self, n):
        g = algebra.u3_generators(FockBasis.full(n))
        dev = max_abs(commutator(g["D+"], g["D-"]) - 2.0 * g["l"].matrix)
        assert dev < 1e-12

    def test_w2_on_pure_sigma_state(self):
        for n in (3, 5):
            basis = FockBasis.full(n)
            g = algebra.u3_generators(basis)
            s = QuantumState.number_state(basis, (0, n, 0))
            assert g["W2"].expectation(s).real == pytest.approx(
                w2_on_pure_sigma_oracle(n), abs=1e-12)

    def test_w2_casimir_commutes_with_generators(self):
        g = algebra.u3_generators(FockBasis.full(4))
        for key in ("n", "l", "D+", "D-", "R+", "R-"):
            # W^2 is the pure SO(3)-type Casimir: it commutes with l, D±
            if key in ("l", "D+", "D-"):
                assert max_abs(commutator(g["W2"], g[key])) < 1e-10


class TestSU2Subalgebras:
    @pytest.mark.parametrize("which", ["mode_x", "mode_y", "L"])
    @pytest.mark.parametrize("convention", [Convention.CIRCULAR, Convention.CARTESIAN])
    def test_closure(self, which, convention):
        basis = FockBasis.full(4, convention)
        su2 = algebra.su2_subalgebra(which, basis)
        assert max_abs(commutator(su2["x"], su2["y"]) - 1j * su2["z"].matrix) < 1e-12
        assert max_abs(commutator(su2["y"], su2["z"]) - 1j * su2["x"].matrix) < 1e-12
        assert max_abs(commutator(su2["z"], su2["x"]) - 1j * su2["y"].matrix) < 1e-12

    def test_total_spin_relations(self):
        basis = FockBasis.full(4)
        su3 = algebra.su3_generators(basis)
        lx = algebra.su2_subalgebra("L", basis)
        x = algebra.su2_subalgebra("mode_x", basis)
        y = algebra.su2_subalgebra("mode_y", basis)
        assert algebra.max_deviation(su3["Jz"], 2.0 * lx["z"]) < 1e-12
        dev = max_abs(su3["Jy"].matrix + 2.0 * x["y"].matrix)
        assert dev < 1e-12
        dev = max_abs(su3["Jx"].matrix + 2.0 * y["y"].matrix)
        assert dev < 1e-12


class TestBlockOperators:
    @pytest.mark.parametrize("n,l", [(6, 0), (6, 1), (6, -2), (9, 3)])
    def test_w2_block_matches_full_restriction(self, n, l):
        full = FockBasis.full(n)
        w2_full = algebra.u3_generators(full)["W2"].to_dense()
        block = FockBasis.fixed_l(n, l)
        idx = [full.index_of(s) for s in block.states]
        sub = w2_full[np.ix_(idx, idx)]
        dev = np.max(np.abs(algebra.w2_fixed_l(n, l).to_dense() - sub))
        assert dev < 1e-12

    def test_d_block_shapes(self):
        op = algebra.d_block(6, 0, +1)
        assert op.domain.l_range == (0, 0)
        assert op.codomain.l_range == (1, 1)

    def test_large_n_block_is_hermitian(self):
        op = algebra.w2_fixed_l(1500, 0)
        assert max_abs(op.matrix - op.matrix.conj().T) == 0.0


class TestBuildOperator:
    def test_strict_rejects_leaving_codomain(self):
        basis = FockBasis.full(4)
        with pytest.raises(ValueError):
            algebra.build_operator([(1.0, [(0, "c")])], basis)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=2 ** 31))
    def test_random_hermitian_quadratic(self, n, seed):
        rng = np.random.default_rng(seed)
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        m = m + m.conj().T
        op = algebra.quadratic(m, FockBasis.full(n))
        assert op.hermitian
        assert max_abs(op.matrix - op.matrix.conj().T) < 1e-12

    def test_dagger_round_trip(self):
        basis = FockBasis.full(3)
        op = algebra.d_block(3, 0, +1)
        assert algebra.max_deviation(op.dagger().dagger(), op) < 1e-15


class TestModeRotationLift:
    def test_lift_preserves_norm(self):
        rng = np.random.default_rng(7)
        basis = FockBasis.full(5)
        vec = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
        vec /= np.linalg.norm(vec)
        from vibronsim.fock import single_particle_rotation
        v = single_particle_rotation(Convention.CIRCULAR, Convention.CARTESIAN)
        out = algebra.lift_mode_rotation(v, basis, vec)
        assert abs(np.linalg.norm(out) - 1.0) < 1e-12

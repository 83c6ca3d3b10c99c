"""Basis enumeration, state containers, and convention conversion."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vibronsim.fock import (Convention, FockBasis, QuantumState,
                            convert_convention, full_dimension,
                            project_two_mode, single_particle_rotation)


def brute_force_triples(n_total, l_min=None, l_max=None):
    """Independent enumeration oracle: all (n1, n0, n2) with sum N."""
    out = []
    for n1 in range(n_total + 1):
        for n0 in range(n_total - n1 + 1):
            n2 = n_total - n1 - n0
            if l_min is not None and not (l_min <= n1 - n2 <= l_max):
                continue
            out.append((n1, n0, n2))
    return out


class TestDimensions:
    def test_full_dimension_matches_enumeration(self):
        for n in range(0, 30):
            assert full_dimension(n) == len(brute_force_triples(n))
            assert FockBasis.full(n).dim == full_dimension(n)

    def test_full_n2_is_6(self):
        assert FockBasis.full(2).dim == 6

    def test_fixed_l0_n100_is_51(self):
        assert FockBasis.fixed_l(100, 0).dim == 51

    def test_l_band_n5_is_9(self):
        oracle = brute_force_triples(5, -1, 1)
        assert FockBasis.l_band(5, -1, 1).dim == len(oracle) == 9

    def test_fixed_l_dims_partition_full(self):
        n = 12
        total = sum(FockBasis.fixed_l(n, l).dim for l in range(-n, n + 1))
        assert total == full_dimension(n)


class TestRankUnrank:
    @pytest.mark.parametrize("n", [0, 1, 5, 17, 50])
    def test_round_trip_every_state(self, n):
        basis = FockBasis.full(n)
        for i, s in enumerate(basis.states):
            assert basis.index_of(s) == i
            assert sum(s) == n

    def test_block_round_trip(self):
        basis = FockBasis.l_band(20, -2, 3)
        for i, s in enumerate(basis.states):
            assert basis.index_of(s) == i
            assert -2 <= s[0] - s[2] <= 3

    def test_invalid_band_rejected(self):
        with pytest.raises(ValueError):
            FockBasis.l_band(5, 2, 1)
        with pytest.raises(ValueError):
            FockBasis.l_band(5, -7, 0)
        with pytest.raises(ValueError):
            FockBasis(5, Convention.CARTESIAN, l_range=(0, 0))


class TestQuantumState:
    def test_norm_enforced(self):
        basis = FockBasis.full(3)
        with pytest.raises(ValueError):
            QuantumState(basis, np.ones(basis.dim))

    def test_number_state(self):
        basis = FockBasis.full(4)
        s = QuantumState.number_state(basis, (1, 2, 1))
        assert abs(s.amplitudes[basis.index_of((1, 2, 1))] - 1) < 1e-15


class TestProjection:
    def test_state_already_in_subspace(self):
        basis = FockBasis.full(6, Convention.CARTESIAN)
        s = QuantumState.number_state(basis, (0, 6, 0))
        sm = project_two_mode(s)
        assert sm.retained_weight == pytest.approx(1.0)
        assert abs(sm.amplitudes[0] - 1) < 1e-15

    def test_half_weight_slice(self):
        basis = FockBasis.full(6, Convention.CARTESIAN)
        vec = np.zeros(basis.dim, dtype=complex)
        vec[basis.index_of((0, 6, 0))] = 1 / np.sqrt(2)
        vec[basis.index_of((0, 5, 1))] = 1 / np.sqrt(2)
        sm = project_two_mode(QuantumState(basis, vec))
        assert sm.retained_weight == pytest.approx(0.5)
        assert abs(sm.amplitudes[0] - 1) < 1e-12

    def test_total_depletion_raises(self):
        basis = FockBasis.full(3, Convention.CARTESIAN)
        s = QuantumState.number_state(basis, (0, 2, 1))
        with pytest.raises(ValueError):
            project_two_mode(s)


class TestConversion:
    def test_rotation_unitary(self):
        v = single_particle_rotation(Convention.CIRCULAR, Convention.CARTESIAN)
        assert np.allclose(v @ v.conj().T, np.eye(3), atol=1e-15)

    def test_mode_zero_state_invariant(self):
        for n in (1, 4, 9):
            s = QuantumState.number_state(FockBasis.full(n), (0, n, 0))
            conv = convert_convention(s, Convention.CARTESIAN)
            idx = conv.basis.index_of((0, n, 0))
            assert abs(abs(conv.amplitudes[idx]) - 1) < 1e-12

    def test_single_quantum_expansion(self):
        # one quantum of the first circular mode spreads as
        # (-1/sqrt2)|1,0,0> + (-i/sqrt2)|0,0,1> over the cartesian slots
        s = QuantumState.number_state(FockBasis.full(1), (1, 0, 0))
        conv = convert_convention(s, Convention.CARTESIAN)
        b = conv.basis
        ax = conv.amplitudes[b.index_of((1, 0, 0))]
        ay = conv.amplitudes[b.index_of((0, 0, 1))]
        assert abs(ax - (-1 / np.sqrt(2))) < 1e-12
        assert abs(ay - (-1j / np.sqrt(2))) < 1e-12

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=2 ** 31))
    def test_round_trip_random_state(self, n, seed):
        rng = np.random.default_rng(seed)
        basis = FockBasis.full(n)
        vec = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
        vec /= np.linalg.norm(vec)
        s = QuantumState(basis, vec)
        back = convert_convention(convert_convention(s, Convention.CARTESIAN),
                                  Convention.CIRCULAR)
        assert np.max(np.abs(back.amplitudes - vec)) < 1e-10

    def test_block_basis_rejected(self):
        s = QuantumState.number_state(FockBasis.fixed_l(4, 0), (0, 4, 0))
        with pytest.raises(ValueError):
            convert_convention(s, Convention.CARTESIAN)

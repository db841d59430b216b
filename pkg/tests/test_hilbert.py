import numpy as np
import pytest

from qbranch.errors import DimensionMismatch, NormDrift, UnitMismatch, UnknownLabel
from qbranch.hilbert import (
    HilbertSpace,
    Observable,
    QuantumState,
    UnitaryOp,
    apply,
    embed,
    expectation,
    total_observable,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

QUBIT = HilbertSpace((("a", 2),))
SR = HilbertSpace((("s", 2), ("r", 2)))


class TestHilbertSpace:
    def test_total_dim_and_labels(self):
        space = HilbertSpace((("field", 11), ("apparatus", 11)))
        assert space.total_dim == 121
        assert space.labels == ("field", "apparatus")
        assert space.dim_of("apparatus") == 11

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError, match="unique"):
            HilbertSpace((("a", 2), ("a", 3)))

    def test_bad_dimension_rejected(self):
        with pytest.raises(ValueError):
            HilbertSpace((("a", 0),))

    def test_unknown_label(self):
        with pytest.raises(UnknownLabel):
            SR.axis("nope")

    def test_flat_index_follows_declaration_order(self):
        space = HilbertSpace((("x", 2), ("y", 3)))
        assert space.flat_index({"x": 1, "y": 2}) == 5
        assert space.flat_index({"x": 0, "y": 1}) == 1

    def test_flat_index_range_checked(self):
        with pytest.raises(DimensionMismatch):
            SR.flat_index({"s": 2, "r": 0})


class TestQuantumState:
    def test_requires_normalization(self):
        with pytest.raises(NormDrift):
            QuantumState(QUBIT, np.array([1.0, 1.0]))

    def test_small_drift_renormalized(self):
        amps = np.array([1.0 + 3e-10, 0.0])
        state = QuantumState(QUBIT, amps)
        assert np.linalg.norm(state.amplitudes) == pytest.approx(1.0, abs=1e-14)

    def test_normalized_classmethod(self):
        state = QuantumState.normalized(QUBIT, [3.0, 4.0])
        np.testing.assert_allclose(state.amplitudes, [0.6, 0.8])
        with pytest.raises(ValueError):
            QuantumState.normalized(QUBIT, [0.0, 0.0])

    def test_amplitudes_immutable(self):
        state = QuantumState.basis_state(QUBIT, {"a": 0})
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0.0

    def test_length_checked(self):
        with pytest.raises(DimensionMismatch):
            QuantumState(SR, np.array([1.0, 0.0]))

    def test_fidelity_phase_insensitive(self):
        a = QuantumState.basis_state(QUBIT, {"a": 0})
        b = QuantumState(QUBIT, np.array([1j, 0.0]))
        assert a.fidelity(b) == pytest.approx(1.0)


class TestOperators:
    def test_observable_must_be_hermitian(self):
        from qbranch.errors import NotHermitian

        with pytest.raises(NotHermitian):
            Observable(QUBIT, np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_unitary_validated(self):
        with pytest.raises(ValueError, match="not unitary"):
            UnitaryOp(QUBIT, np.array([[1.0, 0.0], [0.0, 2.0]]))


class TestEmbed:
    def test_single_factor_is_identity_embedding(self):
        np.testing.assert_array_equal(embed(X, "a", QUBIT), X)

    def test_first_factor(self):
        got = embed(np.diag([0.0, 1.0]), "s", SR)
        np.testing.assert_array_equal(got, np.diag([0.0, 0.0, 1.0, 1.0]))

    def test_second_factor(self):
        # hand enumeration of the four diagonal entries in (s, r) order:
        # |00⟩→0, |01⟩→1, |10⟩→0, |11⟩→1
        got = embed(np.diag([0.0, 1.0]), "r", SR)
        np.testing.assert_array_equal(got, np.diag([0.0, 1.0, 0.0, 1.0]))

    def test_unknown_label(self):
        with pytest.raises(UnknownLabel):
            embed(X, "zz", SR)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            embed(np.eye(3), "s", SR)

    @pytest.mark.parametrize("seed", range(4))
    def test_disjoint_embeddings_commute(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        ea, eb = embed(a, "s", SR), embed(b, "r", SR)
        assert np.max(np.abs(ea @ eb - eb @ ea)) <= 1e-12


class TestTotalObservable:
    def test_trivial_rest(self):
        q_s = Observable(HilbertSpace((("s", 2),)), np.diag([0.0, 1.0]), units="energy")
        q_r = Observable(HilbertSpace((("r", 2),)), np.zeros((2, 2)), units="energy")
        total = total_observable(q_s, q_r, SR)
        np.testing.assert_array_equal(total.matrix, np.diag([0.0, 0.0, 1.0, 1.0]))

    def test_sum_spectrum(self):
        q_s = Observable(HilbertSpace((("s", 2),)), np.diag([0.0, 1.0]), units="energy")
        q_r = Observable(HilbertSpace((("r", 2),)), np.diag([0.0, 1.0]), units="energy")
        total = total_observable(q_s, q_r, SR)
        np.testing.assert_array_equal(total.matrix, np.diag([0.0, 1.0, 1.0, 2.0]))

    def test_photon_counter_spectrum(self):
        # field mode at ħω with an apparatus gaining e = ħω per level: the
        # total spectrum is {ħω·(n+k)}, enumerated directly
        hw = 0.7
        n_levels, k_levels = 4, 6
        space = HilbertSpace((("field", n_levels), ("apparatus", k_levels)))
        q_f = Observable(
            HilbertSpace((("field", n_levels),)), hw * np.diag(np.arange(n_levels)), units="energy"
        )
        q_a = Observable(
            HilbertSpace((("apparatus", k_levels),)), hw * np.diag(np.arange(k_levels)), units="energy"
        )
        total = total_observable(q_f, q_a, space)
        expected = [hw * (n + k) for n in range(n_levels) for k in range(k_levels)]
        np.testing.assert_allclose(np.diag(total.matrix).real, expected)

    def test_unit_mismatch(self):
        q_s = Observable(HilbertSpace((("s", 2),)), np.diag([0.0, 1.0]), units="energy")
        q_r = Observable(HilbertSpace((("r", 2),)), np.diag([0.0, 1.0]), units="momentum")
        with pytest.raises(UnitMismatch):
            total_observable(q_s, q_r, SR)

    def test_exactly_hermitian(self):
        rng = np.random.default_rng(5)
        z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        h = (z + z.conj().T) / 2.0
        q_s = Observable(HilbertSpace((("s", 2),)), h, units="x")
        q_r = Observable(HilbertSpace((("r", 2),)), h, units="x")
        total = total_observable(q_s, q_r, SR)
        assert np.array_equal(total.matrix, total.matrix.conj().T)


class TestApplyAndExpectation:
    def test_identity(self):
        state = QuantumState.basis_state(QUBIT, {"a": 0})
        u = UnitaryOp(QUBIT, np.eye(2))
        np.testing.assert_array_equal(apply(u, state).amplitudes, state.amplitudes)

    def test_bit_flip(self):
        state = QuantumState.basis_state(QUBIT, {"a": 0})
        flipped = apply(UnitaryOp(QUBIT, X), state)
        np.testing.assert_allclose(flipped.amplitudes, [0.0, 1.0])

    def test_hadamard_like(self):
        h = (X + Z) / np.sqrt(2.0)
        state = QuantumState.basis_state(QUBIT, {"a": 0})
        out = apply(UnitaryOp(QUBIT, h), state)
        np.testing.assert_allclose(out.amplitudes, np.array([1.0, 1.0]) / np.sqrt(2.0), atol=1e-15)

    def test_space_mismatch(self):
        state = QuantumState.basis_state(SR, {"s": 0, "r": 0})
        with pytest.raises(DimensionMismatch):
            apply(UnitaryOp(QUBIT, np.eye(2)), state)

    def test_expectation_ground(self):
        state = QuantumState.basis_state(QUBIT, {"a": 0})
        q = Observable(QUBIT, np.diag([0.0, 1.0]))
        assert expectation(state, q) == 0.0

    def test_expectation_vacuum_plus_ten_photons(self):
        space = HilbertSpace((("field", 11),))
        amps = np.zeros(11)
        amps[0] = amps[10] = 1.0 / np.sqrt(2.0)
        state = QuantumState(space, amps)
        number = Observable(space, np.diag(np.arange(11.0)), units="energy")
        assert expectation(state, number) == pytest.approx(5.0, abs=1e-12)

    def test_expectation_symmetric_superposition(self):
        state = QuantumState.normalized(QUBIT, [1.0, 1.0])
        q = Observable(QUBIT, np.diag([0.0, 1.0]))
        assert expectation(state, q) == pytest.approx(0.5)

    @pytest.mark.parametrize("seed", range(6))
    def test_heisenberg_schroedinger_consistency(self, seed):
        from qbranch.linalg import random_unitary

        rng = np.random.default_rng(seed)
        dim = int(rng.integers(2, 7))
        space = HilbertSpace((("sys", dim),))
        z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        q = Observable(space, (z + z.conj().T) / 2.0)
        u = UnitaryOp(space, random_unitary(dim, seed))
        psi = QuantumState.normalized(space, rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
        heisenberg = Observable(space, u.matrix.conj().T @ q.matrix @ u.matrix)
        assert expectation(apply(u, psi), q) == pytest.approx(
            expectation(psi, heisenberg), abs=1e-9
        )

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbranch.errors import NotHermitian
from qbranch.linalg import (
    hermitian_eigensystem,
    random_unitary,
    tensor_product,
    unitary_from_hamiltonian,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(dim, rng):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (z + z.conj().T) / 2.0


class TestTensorProduct:
    def test_identity_times_identity(self):
        np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal_case(self):
        got = tensor_product(np.diag([0.0, 1.0]), np.eye(2))
        np.testing.assert_array_equal(got, np.diag([0.0, 0.0, 1.0, 1.0]))

    def test_x_tensor_x_maps_basis_0_to_3(self):
        # hand oracle: (X⊗X)[i·2+j, k·2+l] = X[i,k]·X[j,l], so column 0 has
        # its single 1 at row 3
        xx = tensor_product(X, X)
        expected = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        expected[i * 2 + j, k * 2 + l] = X[i, k] * X[j, l]
        np.testing.assert_array_equal(xx, expected)
        np.testing.assert_array_equal(xx[:, 0], np.array([0, 0, 0, 1], dtype=complex))

    @pytest.mark.parametrize("seed", range(5))
    def test_associativity(self, seed):
        rng = np.random.default_rng(seed)
        dims = rng.integers(2, 4, size=3)
        a, b, c = (
            rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)) for d in dims
        )
        left = tensor_product(tensor_product(a, b), c)
        right = tensor_product(a, tensor_product(b, c))
        assert np.max(np.abs(left - right)) <= 1e-12


class TestHermitianEigensystem:
    def test_diagonal(self):
        values, vectors = hermitian_eigensystem(np.diag([0.0, 1.0]))
        np.testing.assert_allclose(values, [0.0, 1.0])
        np.testing.assert_allclose(np.abs(vectors), np.eye(2))

    def test_pauli_x_spectrum(self):
        # characteristic polynomial λ² - 1 by hand
        values, _ = hermitian_eigensystem(X)
        np.testing.assert_allclose(values, [-1.0, 1.0], atol=1e-12)

    def test_one_by_one(self):
        values, vectors = hermitian_eigensystem(np.array([[3.0]]))
        assert values[0] == pytest.approx(3.0)
        assert abs(abs(vectors[0, 0]) - 1.0) < 1e-14

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigensystem(np.array([[0.0, 1.0], [0.0, 0.0]]))

    @pytest.mark.parametrize("dim", [2, 5, 17, 32])
    def test_reconstruction(self, dim):
        rng = np.random.default_rng(dim)
        h = random_hermitian(dim, rng)
        values, vectors = hermitian_eigensystem(h)
        assert np.all(np.diff(values) >= 0)
        rebuilt = (vectors * values) @ vectors.conj().T
        assert np.linalg.norm(rebuilt - h, "fro") <= 1e-9 * np.linalg.norm(h, "fro")
        assert np.linalg.norm(vectors.conj().T @ vectors - np.eye(dim), "fro") <= 1e-10


class TestUnitaryFromHamiltonian:
    def test_zero_hamiltonian(self):
        np.testing.assert_allclose(unitary_from_hamiltonian(np.zeros((3, 3)), 1.7), np.eye(3), atol=1e-14)

    def test_phase_periodicity(self):
        u = unitary_from_hamiltonian(np.diag([0.0, 1.0]), 2 * np.pi)
        np.testing.assert_allclose(u, np.eye(2), atol=1e-12)

    def test_pauli_x_quarter_period(self):
        # exp(-iXπ/2) = cos(π/2)·I - i·sin(π/2)·X = -i·X by the 2×2 series
        u = unitary_from_hamiltonian(X, np.pi / 2)
        np.testing.assert_allclose(u, -1j * X, atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            unitary_from_hamiltonian(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)

    @settings(max_examples=25, deadline=None)
    @given(
        t1=st.floats(-5.0, 5.0, allow_nan=False),
        t2=st.floats(-5.0, 5.0, allow_nan=False),
        seed=st.integers(0, 2**16),
    )
    def test_group_property(self, t1, t2, seed):
        h = random_hermitian(4, np.random.default_rng(seed))
        left = unitary_from_hamiltonian(h, t1) @ unitary_from_hamiltonian(h, t2)
        right = unitary_from_hamiltonian(h, t1 + t2)
        assert np.linalg.norm(left - right, "fro") <= 1e-9


class TestRandomUnitary:
    def test_dim_one_is_a_phase(self):
        u = random_unitary(1, 42)
        assert u.shape == (1, 1)
        assert abs(abs(u[0, 0]) - 1.0) <= 1e-12

    @pytest.mark.parametrize("dim,seed", [(2, 0), (7, 1), (16, 123)])
    def test_columns_orthonormal(self, dim, seed):
        u = random_unitary(dim, seed)
        assert np.linalg.norm(u.conj().T @ u - np.eye(dim), "fro") <= 1e-10

    def test_deterministic(self):
        a = random_unitary(6, 99)
        b = random_unitary(6, 99)
        np.testing.assert_array_equal(a, b)

    def test_seeds_differ(self):
        assert not np.allclose(random_unitary(4, 0), random_unitary(4, 1))

"""Dense complex linear algebra used by every other module.

Matrices and state vectors are plain ``numpy`` arrays of ``complex128``;
all defect measures are Frobenius norms. Operations are pure functions and
never mutate their arguments.
"""
from __future__ import annotations

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NotHermitian

HERMITICITY_TOL = 1e-10  # relative Frobenius, default for all Hermiticity checks
UNITARITY_TOL = 1e-10    # Frobenius norm of U†U - I


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite, square complex matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def as_vector(v, name: str = "vector") -> np.ndarray:
    """Coerce to a finite complex vector."""
    a = np.asarray(v, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, "fro"))


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """Relative Frobenius distance from the Hermitian part, 0 for m = 0."""
    norm = frobenius(m)
    if norm == 0.0:
        return 0.0
    return frobenius(m - dagger(m)) / norm


def check_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL, name: str = "matrix") -> np.ndarray:
    a = as_matrix(m, name)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitian(f"{name} is not Hermitian: relative defect {defect:.3e} > {tol:.3e}")
    return a


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor as the slow index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermitian_eigensystem(h: np.ndarray, tol: float = HERMITICITY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, real) and orthonormal eigenvector columns of h.

    Raises ``NotHermitian`` if ``‖h - h†‖_F > tol·‖h‖_F`` and
    ``ConvergenceFailure`` if the LAPACK solver stalls. The matrix is
    symmetrized before the solve so the output is exactly consistent with a
    Hermitian input perturbed at the roundoff level.
    """
    a = check_hermitian(h, tol)
    try:
        eigenvalues, eigenvectors = np.linalg.eigh((a + dagger(a)) / 2.0)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise ConvergenceFailure(str(exc)) from exc
    return eigenvalues, eigenvectors


def unitary_from_hamiltonian(h: np.ndarray, t: float, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """exp(-i·h·t) for Hermitian h, via eigendecomposition."""
    eigenvalues, v = hermitian_eigensystem(h, tol)
    phases = np.exp(-1j * eigenvalues * t)
    return (v * phases) @ dagger(v)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary drawn from an existing generator.

    QR of a complex Ginibre matrix with the R-diagonal phases folded back in,
    which makes the distribution exactly Haar rather than QR-convention biased.
    """
    if dim < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {dim}")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Seeded Haar-random unitary; bit-identical for identical (dim, seed)."""
    return haar_unitary(dim, np.random.default_rng(seed))

"""Sudden expansion of an infinite square well.

A particle sits in eigenstate n of a box of length L; the wall jumps
outward by δL = (λ/2)(1-ε) with λ = 2L/n, instantaneously, so the state
vector is unchanged and post-expansion statistics come from re-expanding it
in the new box's eigenbasis. Units: ħ = 1 and 2m = 1, so E_n = (nπ/L)².

The counterintuitive outcome: the most probable new eigenstate is m = n+1
(one more node, *shorter* wavelength) even though ⟨H'⟩ equals the old
energy exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidGeometry, TruncationInadequate

TAIL_MASS_LIMIT = 1e-6          # truncation adequacy for Σ|c_m|²
WAVELENGTH_IDENTITY_TOL = 1e-12
TIE_REL_TOL = 1e-12             # probabilities closer than this count as a tie


@dataclass(frozen=True)
class BoxExpansionSpec:
    """Parameters of one sudden-expansion run.

    ``basis_truncation`` is the number of post-expansion eigenstates kept;
    the energy sum converges only like 1/M, hence the adequacy floor.
    """

    box_length: float
    quantum_number: int
    epsilon: float
    basis_truncation: int = 2000

    def __post_init__(self):
        if self.box_length <= 0:
            raise ValueError(f"box_length must be > 0, got {self.box_length}")
        if self.quantum_number < 1:
            raise ValueError(f"quantum_number must be >= 1, got {self.quantum_number}")
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.basis_truncation < 10 * self.quantum_number:
            raise ValueError(
                f"basis_truncation {self.basis_truncation} below adequacy floor "
                f"{10 * self.quantum_number} (10·n)"
            )

    @property
    def wavelength(self) -> float:
        return 2.0 * self.box_length / self.quantum_number

    @property
    def expansion(self) -> float:
        return (self.wavelength / 2.0) * (1.0 - self.epsilon)

    @property
    def expanded_length(self) -> float:
        return self.box_length + self.expansion


def box_overlap(n: int, L: float, m: int, L_prime: float) -> float:
    """Overlap ⟨m; L'|n; L⟩ of old and new box eigenstates, in closed form.

    ∫₀^L √(2/L)·sin(nπx/L)·√(2/L')·sin(mπx/L') dx via the product-to-sum
    identity; sinc keeps the resonant case nπ/L = mπ/L' exact instead of
    0/0.
    """
    if L <= 0 or n < 1 or m < 1:
        raise ValueError("n, m must be >= 1 and L > 0")
    if L_prime < L:
        raise InvalidGeometry(f"expanded length {L_prime} below original {L}")
    a = n * np.pi / L
    b = m * np.pi / L_prime
    # np.sinc(x) = sin(πx)/(πx), so sin(uL)/u = L·sinc(uL/π)
    return float(
        (L / np.sqrt(L * L_prime))
        * (np.sinc((a - b) * L / np.pi) - np.sinc((a + b) * L / np.pi))
    )


def _overlaps(n: int, L: float, L_prime: float, m: np.ndarray) -> np.ndarray:
    a = n * np.pi / L
    b = m * np.pi / L_prime
    return (L / np.sqrt(L * L_prime)) * (
        np.sinc((a - b) * L / np.pi) - np.sinc((a + b) * L / np.pi)
    )


@dataclass(frozen=True, eq=False)
class BoxExpansionResult:
    overlaps: np.ndarray             # signed c_m, index 0 ↔ m = 1
    probabilities: np.ndarray        # |c_m|²
    most_probable_m: int
    tie: bool
    mean_energy_before: float
    mean_energy_after: float
    wavelength_check: bool
    wavelength_residual: float
    tail_mass: float


def expansion_statistics(
    n: int, L: float, L_prime: float, truncation: int
) -> tuple[np.ndarray, np.ndarray, int, bool, float, float, float]:
    """Core sudden-expansion statistics for arbitrary L' >= L.

    Returns (overlaps, probabilities, most_probable_m, tie,
    energy_before, energy_after, tail_mass). Ties at the argmax break
    toward smaller m; they signal ε near a crossover, not a numerical
    problem.
    """
    if L_prime < L:
        raise InvalidGeometry(f"expanded length {L_prime} below original {L}")
    m = np.arange(1, truncation + 1)
    coeffs = _overlaps(n, L, L_prime, m)
    probabilities = coeffs**2

    tail = 1.0 - float(probabilities.sum())
    if tail > TAIL_MASS_LIMIT:
        raise TruncationInadequate(
            f"retained probability misses {tail:.3e} > {TAIL_MASS_LIMIT}; increase basis_truncation"
        )

    order = np.argsort(-probabilities, kind="stable")  # stable: ties keep smaller m first
    best = int(m[order[0]])
    tie = probabilities.size > 1 and (
        probabilities[order[0]] - probabilities[order[1]]
        <= TIE_REL_TOL * probabilities[order[0]]
    )

    energy_before = (n * np.pi / L) ** 2
    energy_after = float(np.sum(probabilities * (m * np.pi / L_prime) ** 2))
    return coeffs, probabilities, best, bool(tie), float(energy_before), energy_after, tail


def run_box_expansion(spec: BoxExpansionSpec) -> BoxExpansionResult:
    """Expand by δL = (λ/2)(1-ε), re-project, and report the statistics."""
    n = spec.quantum_number
    coeffs, probabilities, best, tie, e_before, e_after, tail = expansion_statistics(
        n, spec.box_length, spec.expanded_length, spec.basis_truncation
    )

    lhs = 2.0 * spec.expanded_length / (n + 1)
    rhs = spec.wavelength * (1.0 - spec.epsilon / (n + 1))
    residual = abs(lhs - rhs)

    return BoxExpansionResult(
        overlaps=coeffs,
        probabilities=probabilities,
        most_probable_m=best,
        tie=tie,
        mean_energy_before=e_before,
        mean_energy_after=e_after,
        wavelength_check=residual <= WAVELENGTH_IDENTITY_TOL,
        wavelength_residual=float(residual),
        tail_mass=tail,
    )

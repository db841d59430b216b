"""Branch structure of a mass superposition sourcing a field and a probe.

A massive particle superposed over two locations generates a different
field value at a distant point in each branch, and a test particle there
accelerates correspondingly. Kinematics only: the field and probe registers
carry abstract orthogonal labels {g0,g1,g2} and {a0,a1,a2} (no field values
are computed). Two controlled permutations chain the correlations:
mass → field, then field → probe, leaving

    c1 |r1⟩|g1⟩|a1⟩ + c2 |r2⟩|g2⟩|a2⟩

with zero amplitude on every mixed triple.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from ..hilbert import HilbertSpace, Observable, QuantumState, UnitaryOp, apply

MASS = "mass"
FIELD = "field"
TEST = "test"

CROSS_BRANCH_TOL = 1e-12


@dataclass(frozen=True)
class EquivalenceSpec:
    """Position amplitudes (c1, c2) of the initial mass superposition."""

    position_amplitudes: tuple[complex, complex]

    def __post_init__(self):
        c1, c2 = self.position_amplitudes
        norm = sqrt(abs(c1) ** 2 + abs(c2) ** 2)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"position_amplitudes must be normalized, ‖·‖ = {norm}")

    def space(self) -> HilbertSpace:
        return HilbertSpace(((MASS, 2), (FIELD, 3), (TEST, 3)))


def _transposition(dim: int, i: int, j: int) -> np.ndarray:
    m = np.eye(dim, dtype=complex)
    m[[i, j]] = m[[j, i]]
    return m


def branching_unitary(space: HilbertSpace) -> UnitaryOp:
    """mass→field then field→probe controlled permutations."""
    eye2 = np.eye(2, dtype=complex)
    eye3 = np.eye(3, dtype=complex)

    # Step 1: mass r_i swaps the field g0 ↔ g_i.
    step1 = np.zeros((18, 18), dtype=complex)
    for i, swap in enumerate((_transposition(3, 0, 1), _transposition(3, 0, 2))):
        proj = np.zeros((2, 2), dtype=complex)
        proj[i, i] = 1.0
        step1 += np.kron(proj, np.kron(swap, eye3))

    # Step 2: field g_j swaps the probe a0 ↔ a_j (g0 leaves it alone).
    step2 = np.zeros((18, 18), dtype=complex)
    for j, swap in enumerate((eye3, _transposition(3, 0, 1), _transposition(3, 0, 2))):
        proj = np.zeros((3, 3), dtype=complex)
        proj[j, j] = 1.0
        step2 += np.kron(eye2, np.kron(proj, swap))

    return UnitaryOp(space, step2 @ step1)


def mass_position_observable(space: HilbertSpace) -> Observable:
    """Position of the mass register: +1 at r1, -1 at r2."""
    matrix = np.kron(np.diag([1.0, -1.0]).astype(complex), np.eye(9, dtype=complex))
    return Observable(space, matrix, units="position")


@dataclass(frozen=True, eq=False)
class EquivalenceResult:
    final_state: QuantumState
    branch_correlation_check: bool
    max_cross_amplitude: float
    branch_weights: tuple[float, float]


def run_equivalence(spec: EquivalenceSpec) -> EquivalenceResult:
    """Run the two-step branching map and verify the correlation structure."""
    space = spec.space()
    c1, c2 = spec.position_amplitudes
    initial_amps = np.zeros(space.total_dim, dtype=complex)
    initial_amps[space.flat_index({MASS: 0, FIELD: 0, TEST: 0})] = c1
    initial_amps[space.flat_index({MASS: 1, FIELD: 0, TEST: 0})] = c2
    initial = QuantumState(space, initial_amps)

    final = apply(branching_unitary(space), initial)

    grid = final.amplitudes.reshape(2, 3, 3)
    max_cross = 0.0
    for i in range(2):
        for j in range(3):
            for k in range(3):
                if j == i + 1 and k == j:
                    continue  # the two correlated triples (r1,g1,a1), (r2,g2,a2)
                max_cross = max(max_cross, abs(grid[i, j, k]))

    return EquivalenceResult(
        final_state=final,
        branch_correlation_check=max_cross <= CROSS_BRANCH_TOL,
        max_cross_amplitude=float(max_cross),
        branch_weights=(float(abs(grid[0, 1, 1]) ** 2), float(abs(grid[1, 2, 2]) ** 2)),
    )

"""Quantized photon counter coupled to a single light mode.

The detector works photoelectrically: each photon excites one electron, so
recording n photons raises the apparatus energy by n·e while the mode drops
to vacuum. The measurement is the permutation |n⟩_f|0⟩_a → |0⟩_f|n⟩_a,
completed shell-by-shell so the total quanta number n+k is preserved
exactly. When the excitation energy e equals the mode energy ħω the
permutation commutes with the total energy and every branch conserves it;
detuning e is allowed and demonstrably breaks the exact verdict.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..conservation import BranchRow, ConservationReport, Tolerances, conservation_report
from ..errors import OverflowUnrepresentable
from ..hilbert import HilbertSpace, Observable, QuantumState, UnitaryOp, apply, expectation, total_observable
from ..linalg import as_vector

FIELD = "field"
APPARATUS = "apparatus"


@dataclass(frozen=True, eq=False)
class PhotonCountingSpec:
    """Light mode with ``photon_cutoff``+1 Fock levels and a K-level counter.

    ``field_amplitudes`` give the initial mode state over {0..n_max}; the
    apparatus starts in its ground level at energy ``apparatus_base_energy``
    and gains ``excitation_energy`` per excited electron.
    """

    photon_cutoff: int
    mode_energy: float
    field_amplitudes: np.ndarray
    apparatus_levels: int
    excitation_energy: float
    apparatus_base_energy: float = 0.0

    def __post_init__(self):
        if self.photon_cutoff < 1:
            raise ValueError(f"photon_cutoff must be >= 1, got {self.photon_cutoff}")
        if self.mode_energy <= 0:
            raise ValueError(f"mode_energy must be > 0, got {self.mode_energy}")
        if self.apparatus_levels < 1:
            raise ValueError(f"apparatus_levels must be >= 1, got {self.apparatus_levels}")
        if self.apparatus_base_energy < 0:
            raise ValueError(f"apparatus_base_energy must be >= 0, got {self.apparatus_base_energy}")
        if self.excitation_energy <= 0:
            raise ValueError(f"excitation_energy must be > 0, got {self.excitation_energy}")
        amps = as_vector(self.field_amplitudes, "field_amplitudes")
        if amps.size != self.photon_cutoff + 1:
            raise ValueError(
                f"field_amplitudes must have length {self.photon_cutoff + 1}, got {amps.size}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"field_amplitudes must be normalized, ‖·‖ = {norm}")
        amps = np.array(amps)
        amps.setflags(write=False)
        object.__setattr__(self, "field_amplitudes", amps)

    @classmethod
    def canonical(cls, mode_energy: float = 1.0, apparatus_base_energy: float = 0.0) -> "PhotonCountingSpec":
        """Equal superposition of vacuum and ten photons, calibrated counter."""
        amps = np.zeros(11, dtype=complex)
        amps[0] = amps[10] = 1.0 / np.sqrt(2.0)
        return cls(
            photon_cutoff=10,
            mode_energy=mode_energy,
            field_amplitudes=amps,
            apparatus_levels=11,
            excitation_energy=mode_energy,
            apparatus_base_energy=apparatus_base_energy,
        )

    def space(self) -> HilbertSpace:
        return HilbertSpace(((FIELD, self.photon_cutoff + 1), (APPARATUS, self.apparatus_levels)))

    def field_energy(self) -> Observable:
        levels = self.mode_energy * np.arange(self.photon_cutoff + 1, dtype=float)
        return Observable(HilbertSpace(((FIELD, self.photon_cutoff + 1),)), np.diag(levels), units="energy")

    def apparatus_energy(self) -> Observable:
        levels = self.apparatus_base_energy + self.excitation_energy * np.arange(
            self.apparatus_levels, dtype=float
        )
        return Observable(HilbertSpace(((APPARATUS, self.apparatus_levels),)), np.diag(levels), units="energy")

    def total_energy(self) -> Observable:
        return total_observable(self.field_energy(), self.apparatus_energy(), self.space())


def _shell_members(s: int, n_max: int, k_max: int) -> list[tuple[int, int]]:
    lo = max(0, s - k_max)
    hi = min(n_max, s)
    return [(n, s - n) for n in range(lo, hi + 1)]  # lexicographic in (n, k)


def build_photon_counter(spec: PhotonCountingSpec) -> UnitaryOp:
    """Permutation recording the photon number in the apparatus level.

    Acts as |n⟩_f|0⟩_a → |0⟩_f|n⟩_a and is completed within each quanta
    shell {(n,k): n+k = s} by pairing the remaining sources and targets in
    lexicographic order, which closes each shell into a cycle. Every shell
    maps onto itself, so n+k is conserved exactly whatever the energy
    calibration.
    """
    n_max = spec.photon_cutoff
    k_max = spec.apparatus_levels - 1
    if n_max > k_max:
        raise OverflowUnrepresentable(
            f"apparatus with {spec.apparatus_levels} levels cannot record up to "
            f"{n_max} photons from its ground state"
        )
    dims = (n_max + 1, spec.apparatus_levels)
    dim = dims[0] * dims[1]
    flat = lambda n, k: n * dims[1] + k

    matrix = np.zeros((dim, dim), dtype=complex)
    for s in range(n_max + k_max + 1):
        members = _shell_members(s, n_max, k_max)
        sources = list(members)
        targets = list(members)
        if s <= n_max:  # the designed action from the ready apparatus
            matrix[flat(0, s), flat(s, 0)] = 1.0
            sources.remove((s, 0))
            targets.remove((0, s))
        for (sn, sk), (tn, tk) in zip(sources, targets):
            matrix[flat(tn, tk), flat(sn, sk)] = 1.0
    return UnitaryOp(spec.space(), matrix)


@dataclass(frozen=True, eq=False)
class PhotonCountingResult:
    report: ConservationReport
    final_state: QuantumState
    branch_table: tuple[BranchRow, ...]
    energy_before: float
    energy_after: float
    transfer_fidelity: float


def run_photon_counting(spec: PhotonCountingSpec, tols: Tolerances = Tolerances()) -> PhotonCountingResult:
    """Couple the mode to the ground-state counter and check conservation.

    ``transfer_fidelity`` compares the final state against the ideal record
    Σ_n c_n |0⟩_f|n⟩_a (global-phase insensitive); it is 1 up to roundoff
    because the counter acts as an exact permutation.
    """
    space = spec.space()
    ground = np.zeros(spec.apparatus_levels, dtype=complex)
    ground[0] = 1.0
    initial = QuantumState(space, np.kron(spec.field_amplitudes, ground))

    u = build_photon_counter(spec)
    final = apply(u, initial)

    q_total = spec.total_energy()
    report = conservation_report(initial, q_total, u, tols)

    expected = np.zeros(space.total_dim, dtype=complex)
    for n, c in enumerate(spec.field_amplitudes):
        expected[space.flat_index({FIELD: 0, APPARATUS: n})] = c
    fidelity = final.fidelity(QuantumState(space, expected))

    return PhotonCountingResult(
        report=report,
        final_state=final,
        branch_table=report.branch_rows,
        energy_before=expectation(initial, q_total),
        energy_after=expectation(final, q_total),
        transfer_fidelity=fidelity,
    )

"""Finite-dimensional quantum models with branch-by-branch conservation checks.

Conservation laws hold exactly in each branch of the wavefunction whenever
the conserved observable commutes with the dynamics; preserving ⟨Q⟩ for a
particular state is a strictly weaker property. This package measures the
difference, constructs both kinds of unitary, and packages four worked
measurement scenarios (sudden box expansion, quantized photon counter,
recoiling beamsplitter, equivalence-principle branching) behind a CLI.
"""

from .conservation import (
    Branch,
    BranchDecomposition,
    BranchRow,
    ConservationReport,
    Tolerances,
    Verdict,
    average_only_counterexample,
    commutator_defect,
    conservation_report,
    eigenspace_clusters,
    max_basis_leakage,
    max_offblock_norm,
    random_conserving_unitary,
    spectral_branches,
)
from .hilbert import (
    HilbertSpace,
    Observable,
    QuantumState,
    UnitaryOp,
    apply,
    embed,
    expectation,
    total_observable,
)
from .linalg import (
    hermitian_eigensystem,
    random_unitary,
    tensor_product,
    unitary_from_hamiltonian,
)
from .scenarios import (
    BeamsplitterSpec,
    BoxExpansionSpec,
    EquivalenceSpec,
    PhotonCountingSpec,
    box_overlap,
    build_photon_counter,
    coherent_overlap,
    run_beamsplitter,
    run_box_expansion,
    run_equivalence,
    run_photon_counting,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BranchDecomposition",
    "BranchRow",
    "BeamsplitterSpec",
    "BoxExpansionSpec",
    "ConservationReport",
    "EquivalenceSpec",
    "HilbertSpace",
    "Observable",
    "PhotonCountingSpec",
    "QuantumState",
    "Tolerances",
    "UnitaryOp",
    "Verdict",
    "apply",
    "average_only_counterexample",
    "box_overlap",
    "build_photon_counter",
    "coherent_overlap",
    "commutator_defect",
    "conservation_report",
    "eigenspace_clusters",
    "embed",
    "expectation",
    "hermitian_eigensystem",
    "max_basis_leakage",
    "max_offblock_norm",
    "random_conserving_unitary",
    "random_unitary",
    "run_beamsplitter",
    "run_box_expansion",
    "run_equivalence",
    "run_photon_counting",
    "spectral_branches",
    "tensor_product",
    "total_observable",
    "unitary_from_hamiltonian",
]

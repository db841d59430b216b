"""Seeded sweeps over conserving unitaries and average-only counterexamples."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conservation import (
    ConservationReport,
    Tolerances,
    Verdict,
    average_only_counterexample,
    conservation_report,
    random_conserving_unitary,
)
from .hilbert import HilbertSpace, Observable, QuantumState
from .linalg import dagger, haar_unitary

FAMILIES = ("conserving", "average-only")


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian with integer spectrum, so degeneracies occur often."""
    values = rng.integers(0, dim, size=dim).astype(float)
    if np.all(values == values[0]):
        values[0] += 1.0  # keep at least two eigenspaces
    w = haar_unitary(dim, rng)
    return (w * values) @ dagger(w)


def random_state(space: HilbertSpace, rng: np.random.Generator) -> QuantumState:
    z = rng.standard_normal(space.total_dim) + 1j * rng.standard_normal(space.total_dim)
    return QuantumState.normalized(space, z)


@dataclass(frozen=True)
class FuzzTrial:
    seed: int
    dim: int
    verdict: Verdict
    commutator_defect: float
    average_defect: float
    max_leakage: float


@dataclass(frozen=True)
class CampaignSummary:
    family: str
    dims: tuple[int, int]
    seeds: tuple[int, int]
    trials: tuple[FuzzTrial, ...]
    expected: Verdict | None

    @property
    def verdict_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for trial in self.trials:
            counts[trial.verdict.value] = counts.get(trial.verdict.value, 0) + 1
        return counts

    @property
    def worst_commutator_defect(self) -> float:
        return max(t.commutator_defect for t in self.trials)

    @property
    def worst_average_defect(self) -> float:
        return max(t.average_defect for t in self.trials)

    @property
    def worst_max_leakage(self) -> float:
        return max(t.max_leakage for t in self.trials)

    @property
    def mismatches(self) -> tuple[FuzzTrial, ...]:
        if self.expected is None:
            return ()
        return tuple(t for t in self.trials if t.verdict != self.expected)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def _one_trial(family: str, seed: int, dims: tuple[int, int], tols: Tolerances) -> FuzzTrial:
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(dims[0], dims[1] + 1))
    if family == "conserving":
        space = HilbertSpace((("sys", dim),))
        q = Observable(space, random_hermitian(dim, rng), units="fuzz")
        u = random_conserving_unitary(q, seed=int(rng.integers(0, 2**31 - 1)), cluster_tol=tols.cluster_tol)
        psi = random_state(space, rng)
    elif family == "average-only":
        q, u, psi = average_only_counterexample(seed, dim=dim)
    else:
        raise ValueError(f"unknown family {family!r}, expected one of {FAMILIES}")
    report: ConservationReport = conservation_report(psi, q, u, tols)
    max_leakage = max((row.leakage for row in report.branch_rows), default=0.0)
    return FuzzTrial(
        seed=seed,
        dim=dim,
        verdict=report.verdict,
        commutator_defect=report.commutator_defect,
        average_defect=report.average_defect,
        max_leakage=max_leakage,
    )


def run_campaign(
    family: str,
    seeds: tuple[int, int],
    dims: tuple[int, int],
    tols: Tolerances = Tolerances(),
    expected: Verdict | None = None,
) -> CampaignSummary:
    """Run one trial per seed; deterministic given the ranges.

    Each trial draws its dimension, conserved observable and state from its
    own seed. The conserving family builds the unitary block-by-block in
    the observable's eigenspaces; the average-only family dresses the
    cyclic-shift counterexample.
    """
    if seeds[0] > seeds[1]:
        raise ValueError(f"empty seed range {seeds[0]}..{seeds[1]}")
    if dims[0] > dims[1]:
        raise ValueError(f"empty dims range {dims[0]}..{dims[1]}")
    if dims[0] < 2:
        raise ValueError(f"dims must start at 2 or above, got {dims[0]}")
    trials = tuple(_one_trial(family, seed, dims, tols) for seed in range(seeds[0], seeds[1] + 1))
    return CampaignSummary(family=family, dims=dims, seeds=seeds, trials=trials, expected=expected)

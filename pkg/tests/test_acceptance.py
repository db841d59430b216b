"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.
"""
import csv
import json
import pathlib
import time

import numpy as np
import pytest

from qbranch.cli import main
from qbranch.conservation import (
    Verdict,
    average_only_counterexample,
    commutator_defect,
    conservation_report,
    max_basis_leakage,
    max_offblock_norm,
    random_conserving_unitary,
)
from qbranch.hilbert import HilbertSpace, Observable, UnitaryOp
from qbranch.linalg import haar_unitary
from qbranch.scenarios.beamsplitter import adequate_cutoff, coherent_overlap, run_beamsplitter
from qbranch.scenarios.beamsplitter import BeamsplitterSpec
from qbranch.scenarios.box import BoxExpansionSpec, box_overlap, run_box_expansion
from qbranch.scenarios.equivalence import EquivalenceSpec, run_equivalence
from qbranch.scenarios.photon import PhotonCountingSpec, run_photon_counting

from .oracles import box_overlap_quadrature, coherent_overlap_closed_form

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
HALF = 1.0 / np.sqrt(2.0)

EPS_GRID = (0.05, 0.1, 0.2)
KICK_GRID = (0.0, 0.5, 1.0, 2.0, 4.0)


def report(number, text):
    print(f"[acceptance] criterion {number:2d}: PASS — {text}")


def test_criterion_01_box_most_probable_state():
    start = time.perf_counter()
    for n in range(1, 11):
        for eps in EPS_GRID:
            result = run_box_expansion(
                BoxExpansionSpec(box_length=1.0, quantum_number=n, epsilon=eps, basis_truncation=2000)
            )
            assert result.most_probable_m == n + 1, (n, eps, result.most_probable_m)
    elapsed = time.perf_counter() - start
    assert elapsed <= 10.0
    report(1, f"argmax |c_m|² = n+1 on the full 30-point grid ({elapsed:.2f} s)")


def test_criterion_02_box_mean_energy():
    table_path = REPO_ROOT / "docs" / "box_energy_convergence.csv"
    with open(table_path) as fh:
        documented = list(csv.DictReader(fh))
    assert documented, "convergence table missing; run scripts/box_convergence.py"

    worst_rel = 0.0
    for n in range(1, 6):
        exact = (n * np.pi) ** 2
        errors = []
        for m in (250, 500, 1000, 2000):
            result = run_box_expansion(
                BoxExpansionSpec(box_length=1.0, quantum_number=n, epsilon=0.1, basis_truncation=m)
            )
            errors.append(exact - result.mean_energy_after)
            row = next(r for r in documented if int(r["n"]) == n and int(r["M"]) == m)
            assert result.mean_energy_after == pytest.approx(float(row["mean_energy_after"]), rel=1e-10)
        assert all(e > 0 for e in errors)
        assert errors == sorted(errors, reverse=True), f"n={n}: error not monotone in M"
        worst_rel = max(worst_rel, errors[-1] / exact)
    assert worst_rel <= 0.005
    report(2, f"mean energy within 0.5% at M=2000 (worst {worst_rel:.2e}), table verified")


def test_criterion_03_box_wavelength_identity():
    worst = 0.0
    for n in range(1, 11):
        for eps in EPS_GRID:
            result = run_box_expansion(
                BoxExpansionSpec(box_length=1.0, quantum_number=n, epsilon=eps, basis_truncation=2000)
            )
            assert result.wavelength_check
            worst = max(worst, result.wavelength_residual)
    assert worst <= 1e-12
    report(3, f"2L'/(n+1) = λ(1 - ε/(n+1)) on the grid (worst residual {worst:.2e})")


@pytest.mark.parametrize("base_energy", [0.0, 7.0])
def test_criterion_04_photon_counting(base_energy):
    result = run_photon_counting(PhotonCountingSpec.canonical(apparatus_base_energy=base_energy))
    assert result.transfer_fidelity >= 1.0 - 1e-10
    assert result.energy_before == pytest.approx(base_energy + 5.0, abs=1e-10)
    assert result.energy_after == pytest.approx(base_energy + 5.0, abs=1e-10)
    assert result.report.verdict is Verdict.EXACT
    assert len(result.branch_table) == 2
    assert all(row.leakage <= 1e-10 for row in result.branch_table)
    report(4, f"final-state fidelity ≥ 1-1e-10, ⟨E⟩ = E+5ħω, verdict EXACT (E={base_energy})")


def test_criterion_05_commutator_branch_equivalence():
    start = time.perf_counter()
    disagreements = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        dim = int(rng.integers(2, 13))
        space = HilbertSpace((("sys", dim),))
        values = rng.integers(0, dim, size=dim).astype(float)
        if np.all(values == values[0]):
            values[0] += 1.0
        w = haar_unitary(dim, rng)
        q = Observable(space, (w * values) @ w.conj().T, units="q")
        if seed % 2 == 0:
            u = random_conserving_unitary(q, seed)
        else:
            u = UnitaryOp(space, haar_unitary(dim, rng))
        classifications = (
            commutator_defect(q, u) <= 1e-10,
            max_offblock_norm(q, u) <= 1e-9,
            max_basis_leakage(q, u) <= 1e-9,
        )
        if len(set(classifications)) != 1:
            disagreements += 1
    elapsed = time.perf_counter() - start
    assert disagreements == 0
    assert elapsed <= 30.0
    report(5, f"3 characterizations agree on 100 trials, dims 2-12 ({elapsed:.2f} s)")


def test_criterion_06_average_only_counterexamples():
    for seed in range(100):
        dim = 2 + seed % 11
        q, u, psi = average_only_counterexample(seed, dim=dim)
        result = conservation_report(psi, q, u)
        assert result.average_defect <= 1e-12, seed
        assert max(row.leakage for row in result.branch_rows) >= 0.1, seed
        assert result.verdict is Verdict.AVERAGE_ONLY, seed
    report(6, "100 triples: ⟨Q⟩ preserved to 1e-12 yet branch leakage ≥ 0.1, all AVERAGE_ONLY")


def test_criterion_07_beamsplitter_visibility():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10):
        alpha = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        for kick in KICK_GRID:
            cutoff = adequate_cutoff(alpha, max(KICK_GRID))
            visibility = abs(coherent_overlap(alpha, kick, cutoff))
            worst = max(worst, abs(visibility - np.exp(-(kick**2) / 2.0)))
    assert worst <= 1e-7

    spec = BeamsplitterSpec(
        coherent_amplitude=1.0 + 0.5j,
        momentum_kick=0.0,
        fock_cutoff=adequate_cutoff(1.0 + 0.5j, 0.0),
        path_amplitudes=(HALF, HALF),
    )
    result = run_beamsplitter(spec)
    assert result.visibility == 1.0
    assert result.unitarity_defect <= 1e-9

    kicked = run_beamsplitter(
        BeamsplitterSpec(
            coherent_amplitude=1.0 + 0.5j,
            momentum_kick=2.0,
            fock_cutoff=adequate_cutoff(1.0 + 0.5j, 2.0),
            path_amplitudes=(HALF, HALF),
        )
    )
    assert kicked.unitarity_defect <= 1e-9
    report(7, f"|⟨α-δ|α⟩| matches exp(-|δ|²/2) to {worst:.2e}; δ=0 visibility exactly 1")


def test_criterion_08_equivalence_branching():
    spec = EquivalenceSpec(position_amplitudes=(HALF, HALF))
    result = run_equivalence(spec)
    space = spec.space()
    expected = np.zeros(space.total_dim, dtype=complex)
    expected[space.flat_index({"mass": 0, "field": 1, "test": 1})] = HALF
    expected[space.flat_index({"mass": 1, "field": 2, "test": 2})] = HALF
    fidelity = abs(np.vdot(expected, result.final_state.amplitudes)) ** 2
    assert fidelity >= 1.0 - 1e-12
    assert result.max_cross_amplitude <= 1e-12
    report(8, f"two-branch state reproduced (fidelity {fidelity:.15f}), no cross terms")


def test_criterion_09_oracle_agreement():
    rng = np.random.default_rng(9)
    worst_box = 0.0
    for _ in range(50):
        n, m = int(rng.integers(1, 9)), int(rng.integers(1, 25))
        L = float(rng.uniform(0.5, 2.0))
        L_prime = L * float(rng.uniform(1.0, 2.0))
        closed = box_overlap(n, L, m, L_prime)
        quadrature = box_overlap_quadrature(n, L, m, L_prime)
        worst_box = max(worst_box, abs(closed - quadrature))
    assert worst_box <= 1e-10

    worst_coherent = 0.0
    for _ in range(10):
        alpha = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        for kick in KICK_GRID:
            cutoff = adequate_cutoff(alpha, max(KICK_GRID))
            truncated = coherent_overlap(alpha, kick, cutoff)
            worst_coherent = max(
                worst_coherent, abs(truncated - coherent_overlap_closed_form(alpha, kick))
            )
    assert worst_coherent <= 1e-8
    report(9, f"quadrature agrees to {worst_box:.2e}; coherent closed form to {worst_coherent:.2e}")


def test_criterion_10_determinism(tmp_path):
    config = tmp_path / "photon.json"
    config.write_text(
        json.dumps(
            {
                "scenario": "photon",
                "seed": 3,
                "parameters": {
                    "photon_cutoff": 10,
                    "mode_energy": 1.0,
                    "field_amplitudes": [HALF] + [0.0] * 9 + [HALF],
                    "apparatus_levels": 11,
                    "excitation_energy": 1.0,
                },
            }
        )
    )
    outputs = []
    for sub in ("first", "second"):
        assert main(["run", "--config", str(config), "--out", str(tmp_path / sub)]) == 0
        outputs.append((tmp_path / sub / "photon_results.json").read_bytes())
    assert outputs[0] == outputs[1]

    fuzz_outputs = []
    for sub in ("fa", "fb"):
        argv = ["fuzz", "--dims", "2..10", "--seeds", "0..9", "--family", "average-only",
                "--assert", "AVERAGE_ONLY", "--out", str(tmp_path / sub)]
        assert main(argv) == 0
        fuzz_outputs.append((tmp_path / sub / "fuzz_results.json").read_bytes())
    assert fuzz_outputs[0] == fuzz_outputs[1]
    report(10, "identical config + seed gives byte-identical machine output")

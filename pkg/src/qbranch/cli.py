"""Command-line runner: scenario configs in, reports and result files out.

Configs are JSON, one scenario per file, complex numbers as [re, im] pairs.
Machine-readable results are JSON with a schema_version field; sweep data
goes to RFC-4180 CSV. Exit codes: 0 success, 1 a requested conservation
assertion failed, 2 config error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Any

import numpy as np

from .conservation import Tolerances, Verdict
from .errors import ConfigError, QBranchError
from .fuzz import FAMILIES, CampaignSummary, run_campaign
from .scenarios.beamsplitter import BeamsplitterSpec, adequate_cutoff, coherent_overlap, run_beamsplitter
from .scenarios.box import BoxExpansionSpec, run_box_expansion
from .scenarios.equivalence import EquivalenceSpec, run_equivalence
from .scenarios.photon import PhotonCountingSpec, run_photon_counting

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "QBRANCH_OUTPUT_DIR"
SCENARIOS = ("box", "photon", "beamsplitter", "equivalence", "fuzz")
DEFAULT_KICK_SWEEP = (0.0, 0.5, 1.0, 2.0, 4.0)

MACHINE_DIGITS = 12
HUMAN_DIGITS = 6


def _round_floats(value: Any) -> Any:
    """Round every float to 12 significant digits for stable machine output."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, str)) or value is None:
        return value
    if isinstance(value, float):
        return float(f"{value:.{MACHINE_DIGITS}g}")
    if isinstance(value, complex):
        return [_round_floats(value.real), _round_floats(value.imag)]
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _h(x: float) -> str:
    return f"{x:.{HUMAN_DIGITS}g}"


# ---------------------------------------------------------------------------
# config parsing


def _as_complex(value: Any, path: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise ConfigError(path, f"expected a number or [re, im] pair, got {value!r}")


_REQUIRED = object()


def _field_path(path: str, name: str) -> str:
    return f"{path}.{name}" if path else name


def _get(params: dict, name: str, path: str, default=_REQUIRED):
    if name in params:
        return params[name]
    if default is _REQUIRED:
        raise ConfigError(_field_path(path, name), "missing required field")
    return default


def _number(params: dict, name: str, path: str, minimum=None, exclusive=False, default=_REQUIRED):
    value = _get(params, name, path, default)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(_field_path(path, name), f"expected a number, got {value!r}")
    value = float(value)
    if minimum is not None and (value <= minimum if exclusive else value < minimum):
        bound = ">" if exclusive else ">="
        raise ConfigError(_field_path(path, name), f"must be {bound} {minimum}, got {value}")
    return value


def _integer(params: dict, name: str, path: str, minimum=None, default=_REQUIRED):
    value = _get(params, name, path, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(_field_path(path, name), f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(_field_path(path, name), f"must be >= {minimum}, got {value}")
    return value


def _complex_pair(params: dict, name: str, path: str) -> tuple[complex, complex]:
    value = _get(params, name, path)
    if not isinstance(value, list) or len(value) != 2:
        raise ConfigError(f"{path}.{name}", "expected a pair of complex numbers")
    return (
        _as_complex(value[0], f"{path}.{name}[0]"),
        _as_complex(value[1], f"{path}.{name}[1]"),
    )


def _int_range(value: Any, path: str) -> tuple[int, int]:
    if isinstance(value, str):
        parts = value.split("..")
        if len(parts) != 2:
            raise ConfigError(path, f"expected a range like 2..12, got {value!r}")
        try:
            lo, hi = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigError(path, f"expected integer endpoints, got {value!r}") from None
    elif isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value):
        lo, hi = value
    else:
        raise ConfigError(path, f"expected a range like 2..12 or [2, 12], got {value!r}")
    if lo > hi:
        raise ConfigError(path, f"empty range {lo}..{hi}")
    return lo, hi


@dataclass
class RunConfig:
    scenario: str
    parameters: dict
    tolerances: Tolerances
    seed: int
    assert_verdict: Verdict | None
    report_path: str
    results_path: str
    csv_path: str | None
    raw: dict


def _build_spec(scenario: str, params: dict):
    """Translate the parameters block into the scenario's spec object."""
    path = "parameters"
    try:
        if scenario == "box":
            return BoxExpansionSpec(
                box_length=_number(params, "box_length", path, minimum=0.0, exclusive=True),
                quantum_number=_integer(params, "quantum_number", path, minimum=1),
                epsilon=_number(params, "epsilon", path),
                basis_truncation=_integer(params, "basis_truncation", path, minimum=1, default=2000),
            )
        if scenario == "photon":
            cutoff = _integer(params, "photon_cutoff", path, minimum=1)
            raw_amps = _get(params, "field_amplitudes", path)
            if not isinstance(raw_amps, list):
                raise ConfigError(f"{path}.field_amplitudes", "expected a list of complex numbers")
            amps = np.array(
                [_as_complex(v, f"{path}.field_amplitudes[{i}]") for i, v in enumerate(raw_amps)]
            )
            levels = _integer(params, "apparatus_levels", path, minimum=1)
            if levels < cutoff + 1:
                raise ConfigError(
                    f"{path}.apparatus_levels",
                    f"must be >= photon_cutoff + 1 = {cutoff + 1} so every count is recordable",
                )
            return PhotonCountingSpec(
                photon_cutoff=cutoff,
                mode_energy=_number(params, "mode_energy", path, minimum=0.0, exclusive=True),
                field_amplitudes=amps,
                apparatus_levels=levels,
                excitation_energy=_number(params, "excitation_energy", path, minimum=0.0, exclusive=True),
                apparatus_base_energy=_number(params, "apparatus_base_energy", path, minimum=0.0, default=0.0),
            )
        if scenario == "beamsplitter":
            sweep = _get(params, "kick_sweep", path, default=list(DEFAULT_KICK_SWEEP))
            if not isinstance(sweep, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) and v >= 0 for v in sweep
            ):
                raise ConfigError(f"{path}.kick_sweep", "expected a list of nonnegative kick magnitudes")
            alpha = _as_complex(_get(params, "coherent_amplitude", path), f"{path}.coherent_amplitude")
            delta = _as_complex(_get(params, "momentum_kick", path), f"{path}.momentum_kick")
            cutoff = _integer(params, "fock_cutoff", path, minimum=1)
            worst_kick = max([abs(delta)] + [float(v) for v in sweep])
            needed = adequate_cutoff(alpha, worst_kick)
            if cutoff < needed:
                raise ConfigError(
                    f"{path}.fock_cutoff",
                    f"must be >= {needed} for |α| = {abs(alpha):.3g} and the largest kick {worst_kick:.3g}",
                )
            return BeamsplitterSpec(
                coherent_amplitude=alpha,
                momentum_kick=delta,
                fock_cutoff=cutoff,
                path_amplitudes=_complex_pair(params, "path_amplitudes", path),
            ), tuple(float(v) for v in sweep)
        if scenario == "equivalence":
            return EquivalenceSpec(
                position_amplitudes=_complex_pair(params, "position_amplitudes", path)
            )
        if scenario == "fuzz":
            family = _get(params, "family", path)
            if family not in FAMILIES:
                raise ConfigError(f"{path}.family", f"expected one of {FAMILIES}, got {family!r}")
            return (
                family,
                _int_range(_get(params, "seeds", path), f"{path}.seeds"),
                _int_range(_get(params, "dims", path), f"{path}.dims"),
            )
    except (ValueError, QBranchError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(path, str(exc)) from exc
    raise ConfigError("scenario", f"expected one of {SCENARIOS}, got {scenario!r}")


def load_run_config(
    config_path: str,
    seed: int | None = None,
    csv_path: str | None = None,
    tol_exact: float | None = None,
    tol_avg: float | None = None,
    tol_cluster: float | None = None,
    out_dir: str | None = None,
) -> RunConfig:
    try:
        with open(config_path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise ConfigError("config", f"no such file: {config_path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config", "top level must be a JSON object")

    scenario = raw.get("scenario")
    if scenario not in SCENARIOS:
        raise ConfigError("scenario", f"expected one of {SCENARIOS}, got {scenario!r}")
    params = raw.get("parameters", {})
    if not isinstance(params, dict):
        raise ConfigError("parameters", "expected an object")

    tols_raw = raw.get("tolerances", {})
    if not isinstance(tols_raw, dict):
        raise ConfigError("tolerances", "expected an object")
    defaults = Tolerances()
    tols = Tolerances(
        exact_tol=tol_exact if tol_exact is not None else _number(tols_raw, "exact_tol", "tolerances", minimum=0.0, exclusive=True, default=defaults.exact_tol),
        avg_tol=tol_avg if tol_avg is not None else _number(tols_raw, "avg_tol", "tolerances", minimum=0.0, exclusive=True, default=defaults.avg_tol),
        cluster_tol=tol_cluster if tol_cluster is not None else _number(tols_raw, "cluster_tol", "tolerances", minimum=0.0, exclusive=True, default=defaults.cluster_tol),
        weight_floor=_number(tols_raw, "weight_floor", "tolerances", minimum=0.0, default=defaults.weight_floor),
    )

    if seed is None:
        seed = _integer(raw, "seed", "", minimum=0, default=0)

    assert_raw = raw.get("assert_verdict")
    assert_verdict = None
    if assert_raw is not None:
        try:
            assert_verdict = Verdict(assert_raw)
        except ValueError:
            raise ConfigError("assert_verdict", f"expected one of {[v.value for v in Verdict]}, got {assert_raw!r}") from None
        if scenario not in ("photon", "fuzz"):
            raise ConfigError("assert_verdict", f"verdict assertions apply to photon and fuzz runs, not {scenario!r}")

    output = raw.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError("output", "expected an object")
    base = out_dir or os.environ.get(OUTPUT_DIR_ENV) or "."

    def _resolve(name: str, default: str | None) -> str | None:
        value = output.get(name, default)
        if value is None:
            return None
        if not isinstance(value, str):
            raise ConfigError(f"output.{name}", f"expected a path string, got {value!r}")
        return value if os.path.isabs(value) else os.path.join(base, value)

    if csv_path is not None:
        resolved_csv = csv_path if os.path.isabs(csv_path) else os.path.join(base, csv_path)
    else:
        resolved_csv = _resolve("csv", None)
    if resolved_csv is not None and scenario not in ("box", "beamsplitter"):
        raise ConfigError("output.csv", f"csv sweep output applies to box and beamsplitter runs, not {scenario!r}")

    return RunConfig(
        scenario=scenario,
        parameters=params,
        tolerances=tols,
        seed=seed,
        assert_verdict=assert_verdict,
        report_path=_resolve("report", f"{scenario}_report.txt"),
        results_path=_resolve("results", f"{scenario}_results.json"),
        csv_path=resolved_csv,
        raw=raw,
    )


# ---------------------------------------------------------------------------
# scenario execution


def _branch_table_lines(rows) -> list[str]:
    lines = ["branch rows (eigenvalue, weight, leakage):"]
    for row in rows:
        lines.append(f"  {_h(row.eigenvalue):>12}  {_h(row.weight):>10}  {_h(row.leakage):>10}")
    return lines


def _execute_box(cfg: RunConfig):
    spec = _build_spec("box", cfg.parameters)
    result = run_box_expansion(spec)
    top = np.argsort(-result.probabilities, kind="stable")[:10]
    payload = {
        "most_probable_m": result.most_probable_m,
        "tie": result.tie,
        "mean_energy_before": result.mean_energy_before,
        "mean_energy_after": result.mean_energy_after,
        "wavelength_check": result.wavelength_check,
        "wavelength_residual": result.wavelength_residual,
        "tail_mass": result.tail_mass,
        "top_probabilities": [[int(m + 1), float(result.probabilities[m])] for m in top],
    }
    lines = [
        f"most probable new state: m = {result.most_probable_m}"
        + (" (tie, smaller m reported)" if result.tie else ""),
        f"mean energy before: {_h(result.mean_energy_before)}",
        f"mean energy after:  {_h(result.mean_energy_after)}",
        f"wavelength identity residual: {_h(result.wavelength_residual)}"
        + (" (ok)" if result.wavelength_check else " (FAILED)"),
        f"discarded tail mass: {_h(result.tail_mass)}",
    ]
    csv_rows = None
    if cfg.csv_path:
        L_prime = spec.expanded_length
        m = np.arange(1, spec.basis_truncation + 1)
        csv_rows = (
            ["m", "overlap", "probability", "energy"],
            [
                [
                    int(mm),
                    _round_floats(float(c)),
                    _round_floats(float(p)),
                    _round_floats(float((mm * np.pi / L_prime) ** 2)),
                ]
                for mm, c, p in zip(m, result.overlaps, result.probabilities)
            ],
        )
    return payload, lines, csv_rows, None


def _execute_photon(cfg: RunConfig):
    spec = _build_spec("photon", cfg.parameters)
    result = run_photon_counting(spec, cfg.tolerances)
    payload = {
        "verdict": result.report.verdict.value,
        "commutator_defect": result.report.commutator_defect,
        "average_defect": result.report.average_defect,
        "branches": [
            {"eigenvalue": r.eigenvalue, "weight": r.weight, "leakage": r.leakage}
            for r in result.branch_table
        ],
        "energy_before": result.energy_before,
        "energy_after": result.energy_after,
        "transfer_fidelity": result.transfer_fidelity,
    }
    lines = [
        f"verdict: {result.report.verdict.value}",
        f"commutator defect: {_h(result.report.commutator_defect)}",
        f"average defect:    {_h(result.report.average_defect)}",
        f"energy before:     {_h(result.energy_before)}",
        f"energy after:      {_h(result.energy_after)}",
        f"transfer fidelity: {_h(result.transfer_fidelity)}",
        *_branch_table_lines(result.branch_table),
    ]
    return payload, lines, None, result.report.verdict


def _execute_beamsplitter(cfg: RunConfig):
    spec, sweep = _build_spec("beamsplitter", cfg.parameters)
    result = run_beamsplitter(spec)
    payload = {
        "visibility": result.visibility,
        "expected_visibility": result.expected_visibility,
        "unitarity_defect": result.unitarity_defect,
        "branches": [
            {
                "label": r.label,
                "weight": r.weight,
                "pointer_shift": r.pointer_shift,
                "photon_shift": r.photon_shift,
                "residual": r.residual,
            }
            for r in result.branch_rows
        ],
    }
    lines = [
        f"visibility: {_h(result.visibility)} (closed form {_h(result.expected_visibility)})",
        f"unitarity defect: {_h(result.unitarity_defect)}",
        "branch momentum ledger (label, weight, pointer shift, photon shift, residual):",
    ]
    for r in result.branch_rows:
        lines.append(
            f"  {r.label}  {_h(r.weight):>10}  {_h(r.pointer_shift):>12}  "
            f"{_h(r.photon_shift):>12}  {_h(r.residual):>12}"
        )
    csv_rows = None
    if cfg.csv_path:
        alpha, delta = spec.coherent_amplitude, spec.momentum_kick
        direction = delta / abs(delta) if delta != 0 else 1.0
        rows = []
        for g in sweep:
            overlap = coherent_overlap(alpha, direction * g, spec.fock_cutoff)
            rows.append(
                [
                    _round_floats(float(g)),
                    _round_floats(abs(overlap)),
                    _round_floats(float(np.exp(-(g**2) / 2.0))),
                ]
            )
        csv_rows = (["kick_abs", "visibility", "expected_visibility"], rows)
    return payload, lines, csv_rows, None


def _execute_equivalence(cfg: RunConfig):
    spec = _build_spec("equivalence", cfg.parameters)
    result = run_equivalence(spec)
    payload = {
        "branch_correlation_check": result.branch_correlation_check,
        "max_cross_amplitude": result.max_cross_amplitude,
        "branch_weights": list(result.branch_weights),
    }
    lines = [
        f"branch correlation check: {'ok' if result.branch_correlation_check else 'FAILED'}",
        f"max cross-branch amplitude: {_h(result.max_cross_amplitude)}",
        f"branch weights: {_h(result.branch_weights[0])}, {_h(result.branch_weights[1])}",
    ]
    return payload, lines, None, None


def _execute_fuzz(cfg: RunConfig):
    family, seeds, dims = _build_spec("fuzz", cfg.parameters)
    summary = run_campaign(family, seeds, dims, cfg.tolerances, cfg.assert_verdict)
    payload = summary_payload(summary)
    lines = summary_lines(summary)
    return payload, lines, None, summary


def summary_payload(summary: CampaignSummary) -> dict:
    return {
        "family": summary.family,
        "dims": list(summary.dims),
        "seeds": list(summary.seeds),
        "expected": summary.expected.value if summary.expected else None,
        "passed": summary.passed,
        "verdict_counts": summary.verdict_counts,
        "worst_commutator_defect": summary.worst_commutator_defect,
        "worst_average_defect": summary.worst_average_defect,
        "worst_max_leakage": summary.worst_max_leakage,
        "trials": [
            {
                "seed": t.seed,
                "dim": t.dim,
                "verdict": t.verdict.value,
                "commutator_defect": t.commutator_defect,
                "average_defect": t.average_defect,
                "max_leakage": t.max_leakage,
            }
            for t in summary.trials
        ],
    }


def summary_lines(summary: CampaignSummary) -> list[str]:
    lines = [
        f"family: {summary.family}  dims: {summary.dims[0]}..{summary.dims[1]}  "
        f"seeds: {summary.seeds[0]}..{summary.seeds[1]}",
        f"verdict counts: {summary.verdict_counts}",
        f"worst commutator defect: {_h(summary.worst_commutator_defect)}",
        f"worst average defect:    {_h(summary.worst_average_defect)}",
        f"worst max leakage:       {_h(summary.worst_max_leakage)}",
    ]
    if summary.expected is not None:
        status = "ok" if summary.passed else f"FAILED ({len(summary.mismatches)} mismatching trials)"
        lines.append(f"asserted verdict {summary.expected.value}: {status}")
    return lines


_EXECUTORS = {
    "box": _execute_box,
    "photon": _execute_photon,
    "beamsplitter": _execute_beamsplitter,
    "equivalence": _execute_equivalence,
    "fuzz": _execute_fuzz,
}


def _write_text(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _write_json(path: str, payload: dict) -> None:
    text = json.dumps(_round_floats(payload), indent=2, sort_keys=True) + "\n"
    _write_text(path, text)


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer)  # csv defaults emit RFC-4180 CRLF line endings
    writer.writerow(header)
    writer.writerows(rows)
    _write_text(path, buffer.getvalue())


def run(cfg: RunConfig) -> int:
    """Execute one run config; returns the process exit status."""
    payload, lines, csv_rows, outcome = _EXECUTORS[cfg.scenario](cfg)

    machine = {
        "schema_version": SCHEMA_VERSION,
        "scenario": cfg.scenario,
        "seed": cfg.seed,
        "tolerances": {
            "exact_tol": cfg.tolerances.exact_tol,
            "avg_tol": cfg.tolerances.avg_tol,
            "cluster_tol": cfg.tolerances.cluster_tol,
            "weight_floor": cfg.tolerances.weight_floor,
        },
        "parameters": cfg.parameters,
        "results": payload,
    }
    _write_json(cfg.results_path, machine)

    header = f"qbranch {cfg.scenario} run (seed {cfg.seed})"
    report = "\n".join([header, "-" * len(header), *lines]) + "\n"
    _write_text(cfg.report_path, report)
    print(report, end="")

    if csv_rows is not None and cfg.csv_path:
        _write_csv(cfg.csv_path, *csv_rows)

    if cfg.scenario == "fuzz":
        summary: CampaignSummary = outcome
        if summary.expected is not None and not summary.passed:
            print(f"assertion failed: expected {summary.expected.value} in every trial", file=sys.stderr)
            return 1
        return 0
    if cfg.assert_verdict is not None and outcome != cfg.assert_verdict:
        print(
            f"assertion failed: expected verdict {cfg.assert_verdict.value}, got {outcome.value}",
            file=sys.stderr,
        )
        return 1
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbranch",
        description="Branch-by-branch conservation checks for quantum measurement models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one scenario from a JSON config")
    run_p.add_argument("--config", required=True, help="path to the scenario config (JSON)")
    run_p.add_argument("--seed", type=int, default=None, help="override the config seed")
    run_p.add_argument("--csv", default=None, help="write sweep data to this CSV (box, beamsplitter)")
    run_p.add_argument("--tol-exact", type=float, default=None, help="override exact_tol")
    run_p.add_argument("--tol-avg", type=float, default=None, help="override avg_tol")
    run_p.add_argument("--tol-cluster", type=float, default=None, help="override cluster_tol")
    run_p.add_argument("--out", default=None, help=f"output directory (default ${OUTPUT_DIR_ENV} or .)")

    fuzz_p = sub.add_parser("fuzz", help="sweep seeded conservation trials")
    fuzz_p.add_argument("--dims", required=True, help="dimension range A..B")
    fuzz_p.add_argument("--seeds", required=True, help="seed range A..B")
    fuzz_p.add_argument("--family", required=True, choices=FAMILIES)
    fuzz_p.add_argument(
        "--assert",
        dest="expected",
        default=None,
        choices=[Verdict.EXACT.value, Verdict.AVERAGE_ONLY.value],
        help="fail (exit 1) unless every trial gets this verdict",
    )
    fuzz_p.add_argument("--tol-exact", type=float, default=None)
    fuzz_p.add_argument("--tol-avg", type=float, default=None)
    fuzz_p.add_argument("--tol-cluster", type=float, default=None)
    fuzz_p.add_argument("--out", default=None, help=f"output directory (default ${OUTPUT_DIR_ENV} or .)")
    return parser


def _cmd_run(args) -> int:
    cfg = load_run_config(
        args.config,
        seed=args.seed,
        csv_path=args.csv,
        tol_exact=args.tol_exact,
        tol_avg=args.tol_avg,
        tol_cluster=args.tol_cluster,
        out_dir=args.out,
    )
    return run(cfg)


def _cmd_fuzz(args) -> int:
    base = args.out or os.environ.get(OUTPUT_DIR_ENV) or "."
    defaults = Tolerances()
    raw = {
        "scenario": "fuzz",
        "parameters": {"family": args.family, "dims": args.dims, "seeds": args.seeds},
    }
    if args.expected is not None:
        raw["assert_verdict"] = args.expected
    cfg = RunConfig(
        scenario="fuzz",
        parameters=raw["parameters"],
        tolerances=Tolerances(
            exact_tol=args.tol_exact if args.tol_exact is not None else defaults.exact_tol,
            avg_tol=args.tol_avg if args.tol_avg is not None else defaults.avg_tol,
            cluster_tol=args.tol_cluster if args.tol_cluster is not None else defaults.cluster_tol,
        ),
        seed=0,
        assert_verdict=Verdict(args.expected) if args.expected is not None else None,
        report_path=os.path.join(base, "fuzz_report.txt"),
        results_path=os.path.join(base, "fuzz_results.json"),
        csv_path=None,
        raw=raw,
    )
    return run(cfg)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_fuzz(args)
    except ConfigError as exc:
        print(f"config error at {exc}", file=sys.stderr)
        return 2
    except QBranchError as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

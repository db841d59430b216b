"""Labeled tensor-factor spaces, states, observables and unitaries.

Factor ordering is the order of declaration; all flat basis indexing derives
from it (left factor is the slow index). Values are immutable after
construction and safe to share across threads.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NormDrift, UnitMismatch, UnknownLabel
from .linalg import (
    HERMITICITY_TOL,
    UNITARITY_TOL,
    as_matrix,
    as_vector,
    check_hermitian,
    dagger,
    frobenius,
    tensor_product,
)

NORM_TOL = 1e-10        # states must be normalized to this
RENORM_DRIFT = 1e-12    # silent renormalization above this
DRIFT_ERROR = 1e-8      # norm drift beyond this indicates a bug, not roundoff


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class HilbertSpace:
    """Ordered list of labeled tensor factors, e.g. (("s", 2), ("r", 2))."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        factors = tuple((str(label), int(dim)) for label, dim in self.factors)
        object.__setattr__(self, "factors", factors)
        labels = [label for label, _ in factors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"factor labels must be unique, got {labels}")
        for label, dim in factors:
            if dim < 1:
                raise ValueError(f"factor {label!r} has non-positive dimension {dim}")

    @property
    def total_dim(self) -> int:
        out = 1
        for _, dim in self.factors:
            out *= dim
        return out

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.factors)

    def axis(self, label: str) -> int:
        for k, (name, _) in enumerate(self.factors):
            if name == label:
                return k
        raise UnknownLabel(f"no factor labeled {label!r} in {self.labels}")

    def dim_of(self, label: str) -> int:
        return self.factors[self.axis(label)][1]

    def flat_index(self, occupation: dict[str, int]) -> int:
        """Flat basis index of a product basis state, one entry per factor."""
        missing = set(self.labels) - set(occupation)
        if missing:
            raise UnknownLabel(f"occupation missing factors {sorted(missing)}")
        idx = 0
        for label, dim in self.factors:
            k = occupation[label]
            if not 0 <= k < dim:
                raise DimensionMismatch(f"index {k} out of range for factor {label!r} (dim {dim})")
            idx = idx * dim + k
        return idx


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Normalized state vector on a HilbertSpace."""

    space: HilbertSpace
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = as_vector(self.amplitudes, "amplitudes")
        if amps.size != self.space.total_dim:
            raise DimensionMismatch(
                f"amplitude length {amps.size} != space dimension {self.space.total_dim}"
            )
        norm = float(np.linalg.norm(amps))
        drift = abs(norm - 1.0)
        if drift > DRIFT_ERROR:
            raise NormDrift(f"state norm {norm} drifted by {drift:.3e} (> {DRIFT_ERROR})")
        if drift > RENORM_DRIFT:
            amps = amps / norm
        object.__setattr__(self, "amplitudes", _freeze(amps))

    @classmethod
    def normalized(cls, space: HilbertSpace, amplitudes) -> "QuantumState":
        """Build a state from any nonzero amplitude vector, normalizing it."""
        amps = as_vector(amplitudes, "amplitudes")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(space, amps / norm)

    @classmethod
    def basis_state(cls, space: HilbertSpace, occupation: dict[str, int]) -> "QuantumState":
        amps = np.zeros(space.total_dim, dtype=complex)
        amps[space.flat_index(occupation)] = 1.0
        return cls(space, amps)

    def fidelity(self, other: "QuantumState") -> float:
        """|⟨self|other⟩|², global-phase insensitive."""
        if self.space != other.space:
            raise DimensionMismatch("states live on different spaces")
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian operator with an opaque unit tag (checked for equality only)."""

    space: HilbertSpace
    matrix: np.ndarray
    units: str = ""

    def __post_init__(self):
        m = check_hermitian(self.matrix, HERMITICITY_TOL, "observable matrix")
        if m.shape[0] != self.space.total_dim:
            raise DimensionMismatch(
                f"matrix dim {m.shape[0]} != space dimension {self.space.total_dim}"
            )
        object.__setattr__(self, "matrix", _freeze(m))


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    space: HilbertSpace
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix, "unitary matrix")
        if m.shape[0] != self.space.total_dim:
            raise DimensionMismatch(
                f"matrix dim {m.shape[0]} != space dimension {self.space.total_dim}"
            )
        defect = frobenius(dagger(m) @ m - np.eye(m.shape[0]))
        if defect > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary: ‖U†U - I‖_F = {defect:.3e}")
        object.__setattr__(self, "matrix", _freeze(m))


def embed(op_matrix: np.ndarray, target_label: str, space: HilbertSpace) -> np.ndarray:
    """Operator acting as op on the labeled factor and as identity elsewhere."""
    op = as_matrix(op_matrix, "op_matrix")
    axis = space.axis(target_label)
    if op.shape[0] != space.factors[axis][1]:
        raise DimensionMismatch(
            f"operator dim {op.shape[0]} != dim {space.factors[axis][1]} of factor {target_label!r}"
        )
    out = np.eye(1, dtype=complex)
    for k, (_, dim) in enumerate(space.factors):
        out = tensor_product(out, op if k == axis else np.eye(dim, dtype=complex))
    return out


def total_observable(q_s: Observable, q_r: Observable, space: HilbertSpace) -> Observable:
    """Q_S ⊗ I + I ⊗ Q_R on the joint space, Hermitian by construction."""
    if q_s.units != q_r.units:
        raise UnitMismatch(f"cannot add {q_s.units!r} to {q_r.units!r}")
    parts = []
    for q in (q_s, q_r):
        if len(q.space.factors) != 1:
            raise DimensionMismatch("summands must each live on a single labeled factor")
        label, dim = q.space.factors[0]
        if label not in space.labels:
            raise UnknownLabel(f"no factor labeled {label!r} in {space.labels}")
        if space.dim_of(label) != dim:
            raise DimensionMismatch(f"factor {label!r} has dim {space.dim_of(label)}, operator has {dim}")
        parts.append((q.matrix, label))
    if parts[0][1] == parts[1][1]:
        raise ValueError(f"summands must act on distinct factors, both use {parts[0][1]!r}")
    total = embed(parts[0][0], parts[0][1], space) + embed(parts[1][0], parts[1][1], space)
    return Observable(space, total, units=q_s.units)


def apply(u: UnitaryOp, psi: QuantumState) -> QuantumState:
    """U·psi; renormalizes roundoff drift, raises NormDrift beyond 1e-8."""
    if u.space != psi.space:
        raise DimensionMismatch("unitary and state live on different spaces")
    return QuantumState(psi.space, u.matrix @ psi.amplitudes)


def expectation(psi: QuantumState, q: Observable) -> float:
    """⟨psi|Q|psi⟩ as a real number."""
    if q.space != psi.space:
        raise DimensionMismatch("observable and state live on different spaces")
    value = complex(np.vdot(psi.amplitudes, q.matrix @ psi.amplitudes))
    assert abs(value.imag) <= 1e-10, f"expectation has imaginary part {value.imag:.3e}"
    return value.real

"""Exceptions and warnings shared across the package."""


class QBranchError(Exception):
    """Base class for all errors raised by qbranch."""


class NotHermitian(QBranchError):
    """Matrix fails the Hermiticity check at the requested tolerance."""


class ConvergenceFailure(QBranchError):
    """The dense eigensolver did not converge."""


class DimensionMismatch(QBranchError):
    """Operands live on spaces of incompatible dimension."""


class UnknownLabel(QBranchError):
    """A factor label is not present in the Hilbert space."""


class UnitMismatch(QBranchError):
    """Observables with different unit tags cannot be combined."""


class NormDrift(QBranchError):
    """State norm drifted beyond roundoff; indicates a non-unitary bug."""


class InvalidGeometry(QBranchError):
    """Box geometry is inconsistent (e.g. expanded length below original)."""


class TruncationInadequate(QBranchError):
    """A truncated basis is too small for the requested accuracy."""


class OverflowUnrepresentable(QBranchError):
    """An energy-conserving completion does not exist at this truncation."""


class ConfigError(QBranchError):
    """A run configuration failed validation.

    ``field`` is the dotted path of the offending entry, e.g.
    ``parameters.box_length``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DegenerateSpectrum(UserWarning):
    """All eigenvalues fell into one cluster; the branch decomposition is trivial."""

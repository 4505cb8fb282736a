"""Exception types shared across the package."""


class QcorrError(Exception):
    """Base class for all package-specific errors."""


class InvalidStateError(QcorrError):
    """A matrix failed density-matrix validation.

    Carries the ``StateValidity`` record when one was computed, so callers
    can report which check failed (Hermiticity, trace, positivity).
    """

    def __init__(self, message, validity=None):
        super().__init__(message)
        self.validity = validity


class NotPositiveError(InvalidStateError):
    """A construction produced a matrix with a negative eigenvalue."""

    def __init__(self, min_eigenvalue, validity=None):
        super().__init__(
            "state is not positive semidefinite "
            f"(min eigenvalue {min_eigenvalue:.6e})",
            validity,
        )
        self.min_eigenvalue = min_eigenvalue


class OutOfClassError(QcorrError):
    """The state has off-diagonal correlation entries, outside the
    diagonal-correlation family the witness is formulated for."""


class ZeroProbabilityOutcomeError(QcorrError):
    """Conditioning on a measurement outcome of numerically zero probability."""


class OptimizerFailureError(QcorrError):
    """The measurement-basis search did not converge within its budget."""

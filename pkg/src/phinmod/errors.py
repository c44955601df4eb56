"""Exception types shared across the package."""


class PhinmodError(Exception):
    """Base class for all package errors."""


class InvalidInputError(PhinmodError):
    """Input data violates a documented precondition.

    Carries optional keyword details (e.g. the failing tuple index) so
    callers can produce machine-readable error reports.
    """

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class UnsupportedCaseError(PhinmodError):
    """The computation falls outside the exactly-solvable range.

    Examples: kernel dimension too large for the pencil analysis, or
    polynomial roots that do not lie in the working quadratic field.
    """


class InternalCheckError(PhinmodError):
    """An internal consistency check failed; indicates a bug, not bad input."""

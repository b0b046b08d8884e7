"""Exception types shared across the package.

Each class carries an ``exit_code`` used by the command-line front end.
"""

from __future__ import annotations


class CovredError(Exception):
    exit_code = 2


class ValidationError(CovredError):
    """A covering system (or a document describing one) breaks a structural invariant."""

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class SelectionError(CovredError, ValueError):
    pass


class InconsistentSystemError(CovredError):
    pass


class EmptyFamilyError(CovredError):
    pass


class UpdateError(CovredError, ValueError):
    pass


class ImplicantCapExceeded(CovredError):
    exit_code = 3


class OracleGuardExceeded(CovredError):
    exit_code = 3


class DocumentError(CovredError):
    pass

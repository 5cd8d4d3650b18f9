"""Exception types shared across the package."""


class QShellError(Exception):
    pass


class FieldMismatchError(QShellError, ValueError):
    """Operands live over different finite fields."""


class AmbientMismatchError(QShellError, ValueError):
    """Operands live in ambient spaces of different dimension."""


class ResourceCapError(QShellError, RuntimeError):
    """An enumeration would exceed the configured subspace cap."""


class AxiomError(QShellError, ValueError):
    """Input fails the axioms an operation requires (not a q-matroid, ...)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAShellingError(QShellError, ValueError):
    pass


class FormatError(QShellError, ValueError):
    """Malformed textual input."""

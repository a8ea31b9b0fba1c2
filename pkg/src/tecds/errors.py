"""Exception types shared across the package."""


class TecdsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TecdsError, ValueError):
    """Malformed instance or solution text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(TecdsError):
    """The instance admits no feasible solution."""


class CertificateError(TecdsError):
    """A solution or intermediate result failed an independent check."""


class CapExceededError(TecdsError):
    """An exact solver refused an instance above its size cap."""

"""Exception types shared across the toolkit."""

from __future__ import annotations


class SkewMatchError(Exception):
    """Base class for all toolkit errors."""


class DomainError(SkewMatchError, ValueError):
    """Input is well-formed but violates an operation's preconditions."""


class ParseError(SkewMatchError, ValueError):
    """Malformed text input."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class JacobianError(DomainError):
    """The positive parts are too clustered for a reliable Jacobian."""


class ConvergenceError(SkewMatchError):
    """The Newton/epsilon schedule ran out of room without converging."""

    def __init__(self, message: str, trace=None, restarts=None):
        super().__init__(message)
        self.trace = list(trace or [])
        self.restarts = list(restarts or [])

"""Exception hierarchy shared by all regusolve modules."""

from typing import Any, Optional


class RegusolveError(Exception):
    """Base class for every error raised by regusolve."""


class ParameterError(RegusolveError, ValueError):
    """Invalid shape, name or parameter value."""


class FactorizationError(RegusolveError):
    """A matrix factorization could not be computed."""


class SelectionError(RegusolveError):
    """A regularization-parameter rule could not produce a value."""


class BenchCaseError(RegusolveError):
    """A benchmark case failed; carries the config that produced it."""

    def __init__(self, message: str, config: Optional[Any] = None):
        super().__init__(message)
        self.config = config

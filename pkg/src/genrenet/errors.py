"""Exception types shared across the pipeline."""

from __future__ import annotations


class GenrenetError(Exception):
    """Base class for all package errors."""


class DataError(GenrenetError):
    """Fatal problem with input data (unreadable file, conflicting rows, ...)."""


class ConfigError(GenrenetError):
    """Invalid or unparseable pipeline configuration."""


class ConvergenceError(GenrenetError):
    """Consensus clustering failed to converge within the round budget.

    Carries the per-round statistics trace accumulated so far, so callers
    can inspect or persist it.
    """

    def __init__(self, message: str, trace: list | None = None):
        super().__init__(message)
        self.trace = trace if trace is not None else []

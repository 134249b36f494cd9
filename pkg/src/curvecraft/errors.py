"""Exception taxonomy shared by the library, the CLI, and the HTTP service."""

from __future__ import annotations


class CurveCraftError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(CurveCraftError, ValueError):
    """A construction parameter is outside its admissible set (degree, shape value, flag)."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class DomainError(CurveCraftError, ValueError):
    """An evaluation argument left its domain (t outside [0,1], x outside the data range)."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class InfeasibleParameterError(CurveCraftError, ValueError):
    """A spacing parameter violates its feasibility bound; carries the bound for callers."""

    def __init__(self, message: str, field: str | None = None, bound: float | None = None):
        super().__init__(message)
        self.field = field
        self.bound = bound


class SchemaError(CurveCraftError, ValueError):
    """A JSON/CSV payload does not match the wire schema; names the offending field."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field

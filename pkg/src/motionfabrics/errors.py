"""Exception types shared across the library."""

from __future__ import annotations


class FabricError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(FabricError):
    """Operands live in spaces of incompatible dimension."""


class NumericDomainError(FabricError):
    """An input is non-finite or outside a function's numeric domain."""


class MapSingularityError(FabricError):
    """A differential map was evaluated where its derivative is undefined."""


class SolveError(FabricError):
    """Linear solve failed; carries a condition-number estimate when available."""

    def __init__(self, message: str, condition: float | None = None):
        super().__init__(message)
        self.condition = condition


class ConfigValidationError(FabricError):
    """Scenario configuration failed validation.

    ``fields`` lists dotted paths of the offending entries.
    """

    def __init__(self, message: str, fields: list[str] | None = None):
        super().__init__(message)
        self.fields = list(fields or [])

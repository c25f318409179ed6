"""Exception taxonomy shared by every module."""

from __future__ import annotations


class RbxError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(RbxError):
    """Operands whose shapes cannot be combined."""


class InvalidStructure(RbxError):
    """A value that violates the defining axioms of its type."""


class BudgetExceeded(RbxError):
    """An exhaustive enumeration would exceed the configured candidate budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} candidates, budget is {budget}"
        )


class ParseError(RbxError):
    """Malformed or inconsistent input data."""

    def __init__(self, message: str, *, source: str | None = None, location: str | None = None):
        self.source = source
        self.location = location
        prefix = ""
        if source:
            prefix += source
        if location:
            prefix += f" at {location}"
        super().__init__(f"{prefix}: {message}" if prefix else message)

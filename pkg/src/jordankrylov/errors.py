"""Shared exception types."""


class JordanKrylovError(Exception):
    """Base class for package errors."""


class DimensionError(JordanKrylovError, ValueError):
    """Operand shapes do not match."""


class InconsistencyError(JordanKrylovError):
    """Inputs violate a structural invariant (wrong factor, wrong multiplicity).

    ``phase`` names the computation stage that detected the problem so CLI
    reports can point at the failing invariant.
    """

    def __init__(self, phase: str, message: str):
        super().__init__(f"{phase}: {message}")
        self.phase = phase


class ParseError(JordanKrylovError, ValueError):
    """A text input failed to parse; carries 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column

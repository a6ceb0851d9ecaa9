"""Exception hierarchy shared by every layer of the toolkit."""
from typing import Optional


class ToolkitError(Exception):
    """Base class of all toolkit errors."""


class ValidationError(ToolkitError, ValueError):
    """Input that violates a structural requirement (exit code 1)."""


class ParseError(ValidationError):
    """Malformed input file; carries the offending line and column."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(f"{where}{message}")


class NotAdmissibleError(ValidationError):
    """Relation with a term of length below two or an ideal that is not admissible."""


class CapExceededError(ValidationError):
    """Some path of the length cap does not reduce to zero."""


class AlgebraMismatchError(ValidationError):
    """Operands live over different algebras."""


class BimoduleError(ValidationError):
    """Left and right actions do not form a bimodule."""


class NotTriangularError(ValidationError):
    """A vertex split does not present the algebra as a triangular matrix algebra."""


class HypothesisUnmetError(ToolkitError):
    """A checker was called on data that fails its precondition."""


class InvariantViolation(ToolkitError, RuntimeError):
    """An internal identity or certificate failed to verify (exit code 2)."""

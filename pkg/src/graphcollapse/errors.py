"""Exception types shared across the package."""

from __future__ import annotations


class GraphFormatError(ValueError):
    """Raised when an input file cannot be parsed.

    Carries the source name and the 1-based line number so command line
    error messages can point at the offending line.
    """

    def __init__(self, source: str, line: int, message: str):
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")


class BudgetExceededError(RuntimeError):
    """Raised when a configurable work bound (faces, search nodes) is hit."""


class InternalInconsistencyError(RuntimeError):
    """Raised when a mathematically guaranteed step fails.

    Seeing this means a precondition that should have been enforced
    upstream was violated, i.e. a bug, not a user error.
    """
